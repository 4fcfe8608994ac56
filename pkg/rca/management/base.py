"""Shared plumbing for the rca management commands."""
import logging

from django.core.management.base import BaseCommand, CommandError

from rca import jobs
from rca.exceptions import RcaError
from rca.exporters import render

logger = logging.getLogger(__name__)

OPTION_KEYS = ('group', 'param', 'N', 'tol', 'precision', 'format', 'out', 'irreps', 'words', 'workers')


class RcaCommand(BaseCommand):
    """Parses the common flags, runs one job and writes the rendered result.

    ``RcaError`` leaves as ``CommandError`` with the error's exit code.
    """

    job_name = None
    uses_N = False
    uses_numerics = False

    def add_arguments(self, parser):
        parser.add_argument('--config', help='JSON job file; flags override its fields')
        parser.add_argument('--group', help='Z/2, I2(4), S3, S3(perm) or family:param')
        parser.add_argument('--param', help='a scalar such as 1/2, or a JSON list of {"orbit", "k"} entries')
        parser.add_argument('--format', choices=['json', 'csv', 'xlsx'])
        parser.add_argument('--out', help='write to this file instead of stdout')
        parser.add_argument('--irreps', help='semicolon separated irrep labels to restrict to')
        parser.add_argument('--workers', type=int, help='thread pool size for independent irreps')
        parser.add_argument('--record', action='store_true', help='keep a ComputationJob row for this run')
        if self.uses_N:
            parser.add_argument('--N', type=int, dest='N', help='truncation degree')
        if self.uses_N or self.uses_numerics:
            parser.add_argument('--allow-uncertified', action='store_true', dest='allow_uncertified',
                                help='return the result even when a certification or residual check fails')
        if self.uses_numerics:
            parser.add_argument('--tol', type=float, help='integrator tolerance')
            parser.add_argument('--precision', type=int, help='working precision in bits')
            parser.add_argument('--words', help='comma separated braid words, e.g. e,T1,T1T2')
            parser.add_argument('--specht', action='store_true', help='compare with the Specht modules (type A)')

    def collect(self, options):
        data = jobs.load_config_file(options['config']) if options.get('config') else {}
        for key in OPTION_KEYS:
            if options.get(key) is not None:
                data[key] = options[key]
        for key in ('allow_uncertified', 'specht'):
            if options.get(key):
                data[key] = True
        return data

    def handle(self, *args, **options):
        try:
            config = jobs.build_config(self.job_name, self.collect(options))
            if options.get('record'):
                result, job = jobs.run_recorded(config)
                logger.info("recorded job #%s", job.pk)
            else:
                result = jobs.run(config)
            data, _, _ = render(result, config.format)
        except RcaError as exc:
            logger.error("%s failed: %s", self.job_name, exc)
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        if config.out:
            with open(config.out, 'wb') as fh:
                fh.write(data)
            self.stderr.write(f"wrote {config.out}")
        else:
            self.stdout.write(data.decode('utf-8'), ending='')
