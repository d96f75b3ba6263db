from conformal.reports import inspect_report

from ._base import ConfigCommand


class Command(ConfigCommand):
    help = "Report the group, axioms, Mueger data, verdicts and anomaly of a category"
    template_name = "conformal/inspect.txt"

    def build_report(self, config, tol, options):
        return inspect_report(config, tol)
