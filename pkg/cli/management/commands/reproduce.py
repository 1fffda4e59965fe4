from atlas.services import AtlasService
from cli.base import KsphereCommand


def _pair(result) -> str:
    return f"({result.m},{result.epsilon})"


class Command(KsphereCommand):
    help = 'Compare the published rank-3 table with both engines'

    def handle(self, *args, **options):
        entries = AtlasService().reproduction_report()
        self.stdout.write(f"{'case':<5} {'V':<22} {'printed':<8} {'oracle':<8} {'reducer':<8} {'orbit':<16} flags")
        for entry in entries:
            orbit = ' '.join(f"{chi:x}" for chi in entry.orbit)
            line = (
                f"{entry.case.label:<5} {entry.case.expression:<22} {_pair(entry.case.printed):<8} "
                f"{_pair(entry.computed):<8} {_pair(entry.reducer):<8} {orbit:<16} {';'.join(entry.flags)}"
            )
            self.stdout.write(self.style.WARNING(line) if entry.flags else line)

        shared = {}
        for entry in entries:
            shared.setdefault(entry.orbit, []).append(entry.case.label)
        self.stdout.write(f"{len(entries)} cases in {len(shared)} GL(3, 2) orbits: "
                          + ', '.join('~'.join(labels) for labels in shared.values()))
