from rca.management.base import RcaCommand


class Command(RcaCommand):
    help = 'Exact c-function table and twist shifts by linear characters'
    job_name = 'c_function'
