from rca.management.base import RcaCommand


class Command(RcaCommand):
    help = 'Decomposition matrices [Delta(F) : L(E)] per block'
    job_name = 'decomp'
    uses_N = True
