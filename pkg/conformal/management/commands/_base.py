import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from django.template.loader import render_to_string

from conformal.config import parse_config
from conformal.exceptions import CapacityError, ConformalError, UnsupportedError, error_code, error_message, error_params
from conformal.reports import dumps

logger = logging.getLogger("conformal")

VERBOSITY_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO, 3: logging.DEBUG}


class ConfigCommand(BaseCommand):
    """
    Shared plumbing: --config/--json/--tol, error translation and report rendering.
    Subclasses implement ``build_report`` and name their text template.
    """
    template_name = None

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="Path to a JSON config file.")
        parser.add_argument("--json", action="store_true", dest="as_json", help="Emit a JSON report.")
        parser.add_argument("--tol", type=float, help="Numeric tolerance (overrides the config).")

    def build_report(self, config, tol, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        level = logger.level
        if options["verbosity"] != 1:
            logger.setLevel(VERBOSITY_LEVELS.get(options["verbosity"], logging.DEBUG))
        try:
            self.emit_report(options)
        finally:
            logger.setLevel(level)

    def emit_report(self, options):
        try:
            config = parse_config(options["config"])
            tol = options["tol"] if options["tol"] is not None else config.tolerance
            if tol <= 0:
                raise ValidationError("--tol must be positive.", code="cli.invalid_flag")
            payload = self.build_report(config, tol, options)
        except ValidationError as exc:
            self.fail(exc, 2, options)
        except (CapacityError, UnsupportedError) as exc:
            self.fail(exc, 3, options)
        except ConformalError as exc:
            self.fail(exc, 1, options)

        if options["as_json"]:
            self.stdout.write(dumps(payload))
        else:
            self.stdout.write(render_to_string(self.template_name, payload).rstrip("\n"))

    def fail(self, exc, returncode, options):
        code, message = error_code(exc), error_message(exc)
        if options["as_json"]:
            self.stdout.write(dumps({"error": {"code": code, "message": message, "params": error_params(exc)}}))
        raise CommandError(f"[{code}] {message}", returncode=returncode) from exc
