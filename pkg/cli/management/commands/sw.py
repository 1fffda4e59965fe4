import json

from charclass.services import CharacteristicClassService, NotOrientableError
from cli.base import KsphereCommand
from cli.serializers import SwRequestSerializer, SwResultSerializer
from repmodel.parser import format_rep
from twist.services import TwistService


class Command(KsphereCommand):
    help = 'Print w1, w2, w3, the Bockstein of w2 and the Spin^c verdict of a representation'

    def add_arguments(self, parser):
        parser.add_argument('-n', type=int, required=True, help='Rank of (Z/2)^n')
        parser.add_argument('-V', '--rep', required=True, help='Representation, e.g. "1+a+b+ab"')
        parser.add_argument('--json', action='store_true', help='Print JSON instead of text')

    def handle(self, *args, **options):
        request = self.validate(SwRequestSerializer, options)
        rep = request['representation']
        summary = CharacteristicClassService().summary(rep)
        try:
            twist = TwistService().twist_of_bundle(rep).format()
        except NotOrientableError:
            twist = None

        if request['json']:
            data = SwResultSerializer({'n': rep.n, 'rep': format_rep(rep), 'twist': twist, **summary}).data
            self.stdout.write(json.dumps(data, indent=2))
            return

        self.stdout.write(f"w1 = {summary['w1']}")
        self.stdout.write(f"w2 = {summary['w2']}")
        self.stdout.write(f"w3 = {summary['w3']}")
        self.stdout.write(f"beta w2 = {summary['beta_w2']}")
        self.stdout.write(f"Spin^c: {summary['spinc']}")
        if twist is None:
            self.stdout.write(self.style.WARNING("not orientable, no twist"))
        else:
            self.stdout.write(f"twist: {twist or 'trivial'}")
