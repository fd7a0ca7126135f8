from apps.runs.management.base import RunCommand


class Command(RunCommand):
    help = 'Higgs mass and e-folds from the volume and Chern-Simons invariant of a homology 3-sphere'
    kind = 'higgsmass'
