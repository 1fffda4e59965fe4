from django.core.management.base import CommandError

from atlas.services import CSV, EXHAUSTIVE, FORMATS, MODES, AtlasService, SizeGuardError
from cli.base import DISAGREEMENT, USAGE_ERROR, KsphereCommand
from cli.serializers import AtlasRequestSerializer
from cli.verification import ENGINE_DISAGREEMENT, Failure, VerificationService
from euler_oracle.results import NonPowerOfTwoError
from reducer.services import EngineDisagreement, ReductionError


class Command(KsphereCommand):
    help = 'Tabulate (m, epsilon) for every canonical character set of rank n'

    def add_arguments(self, parser):
        parser.add_argument('-n', type=int, required=True, help='Rank of (Z/2)^n')
        parser.add_argument('--mode', choices=MODES, default=EXHAUSTIVE)
        parser.add_argument('--samples', type=int, default=1000, help='Sample count in sample mode')
        parser.add_argument('--seed', type=int, default=0, help='Seed of sample mode and reducer spot checks')
        parser.add_argument('--max-size', type=int, help='Largest sampled |S| (default 2n)')
        parser.add_argument('--out', default='-', help='Output path, "-" for stdout')
        parser.add_argument('--format', choices=FORMATS, default=CSV)
        parser.add_argument('--workers', type=int, default=1, help='Worker processes')
        parser.add_argument('--no-orbits', action='store_true', help='Skip the GL(n, 2) orbit column')

    def handle(self, *args, **options):
        request = self.validate(AtlasRequestSerializer, options)
        service = AtlasService(workers=request['workers'], with_orbits=not request['no_orbits'])
        try:
            rows = list(service.enumerate(
                request['n'], request['mode'], samples=request['samples'],
                seed=request['seed'], max_size=request.get('max_size'),
            ))
        except SizeGuardError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)
        except EngineDisagreement as e:
            raise self.disagreement(Failure(e.rep, ENGINE_DISAGREEMENT, str(e)), VerificationService(service.oracle))
        except (NonPowerOfTwoError, ReductionError) as e:
            raise CommandError(str(e), returncode=DISAGREEMENT)

        if request['out'] == '-':
            service.write_table(rows, request['format'], self.stdout)
            return
        try:
            service.write_table(rows, request['format'], request['out'])
        except OSError as e:
            raise CommandError(f"Cannot write {request['out']}: {e}", returncode=USAGE_ERROR)
        flagged = sum(1 for row in rows if row.flags)
        self.stdout.write(self.style.SUCCESS(f"Wrote {len(rows)} rows to {request['out']}"))
        if flagged:
            self.stdout.write(self.style.WARNING(f"{flagged} rows differ from the published table"))
