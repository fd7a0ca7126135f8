from apps.runs.management.base import RunCommand


class Command(RunCommand):
    help = 'MAG-fix stored configurations and measure monopole currents, Wilson loops and Creutz ratios'
    kind = 'magflow'
