from apps.runs.management.base import RunCommand


class Command(RunCommand):
    help = 'Solve dual Ginzburg-Landau vortex profiles for one or more (g, lambda, v, n) points'
    kind = 'vortex'
