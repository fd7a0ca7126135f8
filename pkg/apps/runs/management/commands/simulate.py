from apps.runs.management.base import RunCommand


class Command(RunCommand):
    help = 'Run the SU(2) heatbath/overrelaxation Markov chain and write measurements and snapshots'
    kind = 'simulate'
