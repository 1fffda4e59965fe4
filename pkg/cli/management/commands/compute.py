import json

from django.core.management.base import CommandError

from cli.base import DISAGREEMENT, KsphereCommand
from cli.serializers import ComputeRequestSerializer, ComputeResultSerializer
from cli.verification import ENGINE_DISAGREEMENT, Failure, VerificationService
from euler_oracle.results import NonPowerOfTwoError
from reducer.services import EngineDisagreement, HypergraphReducer, ReductionError, compare_engines
from repmodel.parser import format_rep
from twist.services import BOTH, METHODS, ORACLE, TwistService


class Command(KsphereCommand):
    help = 'Compute the reduced K-groups of S^V for a representation V of (Z/2)^n'

    def add_arguments(self, parser):
        parser.add_argument('-n', type=int, required=True, help='Rank of (Z/2)^n')
        parser.add_argument('-V', '--rep', required=True, help='Representation, e.g. "a+b+ab" or "2a+1"')
        parser.add_argument('--twist', help='Twist pairs, e.g. "1-2,2-3"')
        parser.add_argument('--method', choices=METHODS, default=ORACLE)
        parser.add_argument('--json', action='store_true', help='Print JSON instead of text')
        parser.add_argument('--trace', action='store_true', help='Include the reduction trace')

    def handle(self, *args, **options):
        request = self.validate(ComputeRequestSerializer, options)
        rep, twist, method = request['representation'], request['parsed_twist'], request['method']

        service = TwistService()
        shifted = service.shift_rep(rep, twist)
        trace = None
        try:
            if method == ORACLE:
                result = service.oracle.k_groups(shifted)
            elif method == BOTH:
                result, trace = compare_engines(shifted, oracle=service.oracle)
            else:
                result, trace = HypergraphReducer(oracle=service.oracle).reduce(shifted)
        except EngineDisagreement as e:
            raise self.disagreement(Failure(e.rep, ENGINE_DISAGREEMENT, str(e)), VerificationService(service.oracle))
        except (NonPowerOfTwoError, ReductionError) as e:
            raise CommandError(str(e), returncode=DISAGREEMENT)

        if request['json']:
            outcome = {
                'n': rep.n,
                'rep': format_rep(rep),
                'twist': None if request.get('twist') is None else twist.format(),
                'chi': result.chi,
                'm': result.m,
                'epsilon': result.epsilon,
                'method': method,
            }
            if request['trace']:
                outcome['trace'] = trace
            self.stdout.write(json.dumps(ComputeResultSerializer(outcome).data, indent=2))
            return

        self.stdout.write(f"n={rep.n} V={format_rep(rep) or '0'}")
        if not twist.is_trivial():
            self.stdout.write(f"twist {twist.format()} shifts V to {format_rep(shifted)}")
        self.stdout.write(f"chi = {result.chi}")
        if method == BOTH:
            self.stdout.write("oracle and reducer agree")
        self.stdout.write(self.style.SUCCESS(result.describe()))
        if request['trace']:
            self.stdout.write(trace.to_text())
