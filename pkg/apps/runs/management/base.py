"""
Shared plumbing for the run commands: flags generated from the run-file
keys, error reporting and exit codes.
"""

import logging

from django.core.management.base import BaseCommand, CommandError

from apps.errors import DualMeissnerError
from apps.runs.config import COMMAND_KEYS, load_run_options
from apps.runs.services import start_run

logger = logging.getLogger("dualmeissner.runs.commands")


def report_error(command, exc):
    """Write the machine-parseable diagnostic and turn it into a CommandError with the class exit code."""
    command.stderr.write(exc.diagnostic())
    return CommandError(exc.message, returncode=exc.exit_code)


class RunCommand(BaseCommand):
    kind = None

    def add_arguments(self, parser):
        parser.add_argument('--config', type=str, help='Run file of key=value lines')
        for entry in COMMAND_KEYS[self.kind]:
            parser.add_argument(entry.option, dest=entry.attr, default=None, help=f"{entry.help} [{entry.key}]")

    def handle(self, *args, **options):
        try:
            run_options = load_run_options(self.kind, options.get('config'), options)
            run, result = start_run(self.kind, run_options, options.get('config'))
        except DualMeissnerError as exc:
            raise report_error(self, exc)

        for line in result.lines:
            self.stdout.write(line)
        self.stdout.write(self.style.SUCCESS(
            f"✅ Run #{run.pk} completed: {len(result.manifest.outputs)} file(s) in {result.run_dir}"
        ))
