from rca.management.base import RcaCommand


class Command(RcaCommand):
    help = 'Blocks of category O and the highest weight order inside each block'
    job_name = 'blocks'
