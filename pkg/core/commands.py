import json
import logging

from django.core.management.base import BaseCommand, CommandError

from .exceptions import EklabError
from .manifest import RunManifest, Stopwatch
from .output import sibling

logger = logging.getLogger(__name__)

VERBOSITY_LEVELS = {0: logging.ERROR, 2: logging.INFO, 3: logging.DEBUG}


def _plain(value):
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return str(value)


class EklabCommand(BaseCommand):
    """Base for eklab commands.

    Subclasses set ``form_class`` and implement ``run(params, manifest)``,
    which writes outputs, records them on the manifest and returns a
    JSON-able payload for stdout (or None).
    """
    form_class = None
    default_out = None

    @property
    def subcommand(self):
        return type(self).__module__.rsplit('.', 1)[-1]

    def add_arguments(self, parser):
        parser.add_argument('--threads', help="worker processes (default: every CPU)")
        if self.default_out:
            parser.add_argument('--out', default=self.default_out, help=f"output path (default: {self.default_out})")

    def set_log_level(self, verbosity):
        level = VERBOSITY_LEVELS.get(verbosity)
        if level is not None:
            logging.getLogger().setLevel(level)

    def manifest_path(self, params):
        return sibling(params['out'], '.manifest.json')

    def manifest_parameters(self, params):
        return {key: _plain(value) for key, value in params.items() if key != 'threads'}

    def handle(self, *args, **options):
        self.set_log_level(options.get('verbosity', 1))
        form = self.form_class(data=options)
        if not form.is_valid():
            raise CommandError(form.first_error(), returncode=2)
        self.form = form
        params = form.cleaned_data

        manifest = RunManifest(
            subcommand=self.subcommand,
            parameters=self.manifest_parameters(params),
            workers=params['threads'],
        )
        watch = Stopwatch()
        try:
            with watch:
                payload = self.run(params, manifest)
        except EklabError as exc:
            manifest.status = f"failed: {exc}"
            logger.error("%s failed: %s", self.subcommand, exc)
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        except Exception as exc:
            manifest.status = f"failed: {type(exc).__name__}: {exc}"
            raise
        finally:
            manifest.wall_time = watch.elapsed
            manifest.write(self.manifest_path(params))

        if payload is not None:
            self.stdout.write(json.dumps(payload, indent=2, sort_keys=True))

    def run(self, params, manifest):
        raise NotImplementedError
