from apps.runs.management.base import RunCommand


class Command(RunCommand):
    help = 'Evaluate the Prasad-Sommerfield monopole on a grid: magnetic charge, energy and radial profile'
    kind = 'bps'
