from django.core.management.base import BaseCommand

from apps.errors import DualMeissnerError, ManifestError
from apps.runs.management.base import report_error
from apps.runs.manifest import verify_manifest


class Command(BaseCommand):
    help = 'Check every digest recorded in a run manifest against the files on disk'

    def add_arguments(self, parser):
        parser.add_argument('location', type=str, help='Run directory or manifest.json')

    def handle(self, *args, **options):
        try:
            report = verify_manifest(options['location'])
            for path in report.checked:
                self.stdout.write(f"ok        {path}")
            for path in report.missing:
                self.stdout.write(f"missing   {path}")
            for path in report.mismatched:
                self.stdout.write(f"mismatch  {path}")
            if not report.ok:
                raise ManifestError(
                    f"{len(report.missing)} missing and {len(report.mismatched)} mismatched file(s) "
                    f"in {options['location']}"
                )
        except DualMeissnerError as exc:
            raise report_error(self, exc)

        status = report.manifest.status
        if status != 'complete':
            self.stdout.write(self.style.WARNING(f"⚠️ Manifest status is {status}: {report.manifest.error}"))
        self.stdout.write(self.style.SUCCESS(f"✅ {len(report.checked)} file(s) verified"))
