from django.core.exceptions import ValidationError

from conformal.reports import blocks_report
from modfunctor.validators import validate_labels

from ._base import ConfigCommand


class Command(ConfigCommand):
    help = "Dimension of the space of conformal blocks on a labelled surface"
    template_name = "conformal/blocks.txt"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--genus", type=int, required=True)
        parser.add_argument("--labels", default="", help='Boundary labels, e.g. "1;2" or "1,0;0,1".')
        parser.add_argument("--glued", action="store_true", help="Also glue along every pants decomposition.")

    def build_report(self, config, tol, options):
        if options["genus"] < 0:
            raise ValidationError(
                "Genus must be nonnegative, got %(genus)s.",
                code="surfaces.negative_genus",
                params={"genus": options["genus"]},
            )
        labels = validate_labels(options["labels"])
        return blocks_report(config, options["genus"], labels, glued=options["glued"], tol=tol)
