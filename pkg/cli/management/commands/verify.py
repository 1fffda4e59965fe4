import random

from django.core.management.base import CommandError

from atlas.services import SizeGuardError
from cli.base import DISAGREEMENT, USAGE_ERROR, KsphereCommand
from cli.serializers import VerifyRequestSerializer
from cli.verification import VerificationService, format_set


class Command(KsphereCommand):
    help = 'Cross-check the oracle and the reducer, replaying every trace'

    def add_arguments(self, parser):
        parser.add_argument('-n', type=int, required=True, help='Rank of (Z/2)^n')
        parser.add_argument('--exhaustive', action='store_true', help='Every canonical set, both signs')
        parser.add_argument('--samples', type=int, help='Random sets to check (default 1000)')
        parser.add_argument('--seed', type=int, help='Sampling seed; a fresh one is chosen and printed if omitted')

    def handle(self, *args, **options):
        request = self.validate(VerifyRequestSerializer, options)
        n, exhaustive = request['n'], request['exhaustive']
        samples = request.get('samples') or 1000
        seed = request.get('seed')
        if not exhaustive:
            if seed is None:
                seed = random.SystemRandom().randrange(1 << 32)
            self.stdout.write(f"seed: {seed}")

        verifier = VerificationService()
        try:
            report = verifier.run(n, exhaustive=exhaustive, samples=samples, seed=seed or 0)
        except SizeGuardError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)

        if report.ok:
            self.stdout.write(self.style.SUCCESS(
                f"Checked {report.checked} representations at n={n}: engines agree and every trace replays"
            ))
            return
        for failure, minimal in zip(report.failures, report.minimized):
            self.stdout.write(self.style.ERROR(
                f"{failure.kind}: S={format_set(failure.rep.S)} sign={failure.rep.sign:+d}: {failure.message}"
            ))
            self.stdout.write(f"Minimal failing set: S={format_set(minimal.S)} sign={minimal.sign:+d}")
        raise CommandError(
            f"{len(report.failures)} of {report.checked} representations failed at n={n}",
            returncode=DISAGREEMENT,
        )
