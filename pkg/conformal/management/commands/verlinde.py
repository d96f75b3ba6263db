from django.conf import settings
from django.core.exceptions import ValidationError

from conformal.reports import verlinde_report

from ._base import ConfigCommand


class Command(ConfigCommand):
    help = "Closed-surface block dimensions for genus 1..max-genus"
    template_name = "conformal/verlinde.txt"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--max-genus", type=int, dest="max_genus")

    def build_report(self, config, tol, options):
        max_genus = options["max_genus"]
        if max_genus is None:
            max_genus = settings.CONFORMAL["MAX_GENUS"]
        if max_genus < 1:
            raise ValidationError(
                "--max-genus must be at least 1, got %(value)s.",
                code="cli.invalid_flag",
                params={"value": max_genus},
            )
        return verlinde_report(config, max_genus, tol)
