"""
Shared behaviour of the ksphere management commands.

Exit codes: 0 on success, 1 on usage errors (bad options, parse errors,
size guards), 2 when the engines disagree or a mathematical check fails.
"""
import sys

from django.core.management.base import BaseCommand, CommandError

from .verification import VerificationService, format_set

USAGE_ERROR = 1
DISAGREEMENT = 2


def format_errors(errors) -> str:
    """Flatten serializer.errors into one line per field"""
    lines = []
    for field, messages in errors.items():
        if isinstance(messages, dict):
            messages = [format_errors(messages)]
        text = '; '.join(str(message) for message in messages)
        lines.append(text if field == 'non_field_errors' else f"{field}: {text}")
    return '\n'.join(lines)


class KsphereCommand(BaseCommand):
    requires_system_checks = []
    requires_migrations_checks = False

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # argparse would exit with status 2, which belongs to disagreements.
        parser.called_from_command_line = False
        return parser

    def run_from_argv(self, argv):
        try:
            super().run_from_argv(argv)
        except CommandError as e:
            self.stderr.write(f"{e.__class__.__name__}: {e}")
            sys.exit(e.returncode)

    def validate(self, serializer_class, options) -> dict:
        serializer = serializer_class(data=options)
        if not serializer.is_valid():
            raise CommandError(format_errors(serializer.errors), returncode=USAGE_ERROR)
        return serializer.validated_data

    def disagreement(self, failure, verifier: VerificationService) -> CommandError:
        """Print the discrepancy report with the minimized input; the caller raises the result"""
        minimal = verifier.minimize(failure.rep)
        self.stdout.write(self.style.ERROR(
            f"Engines disagree on n={failure.rep.n} S={format_set(failure.rep.S)} "
            f"sign={failure.rep.sign:+d}: {failure.message}"
        ))
        self.stdout.write(f"Minimal failing set: S={format_set(minimal.S)} sign={minimal.sign:+d}")
        return CommandError(f"{failure.kind} on n={failure.rep.n}", returncode=DISAGREEMENT)
