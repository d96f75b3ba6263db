from django.core.exceptions import ValidationError

from conformal.reports import lattice_report

from ._base import ConfigCommand


class Command(ConfigCommand):
    help = "Discriminant group, discriminant form and xi class of a lattice config"
    template_name = "conformal/lattice.txt"

    def build_report(self, config, tol, options):
        if config.variant != "lattice":
            raise ValidationError(
                "The lattice report needs a lattice config, got %(variant)s.",
                code="cli.not_a_lattice",
                params={"variant": config.variant},
            )
        return lattice_report(config)
