from conformal.reports import torus_report

from ._base import ConfigCommand


class Command(ConfigCommand):
    help = "S and T matrices of the torus representation with relation residuals"
    template_name = "conformal/torus_rep.txt"

    def build_report(self, config, tol, options):
        return torus_report(config, tol)
