from rca.management.base import RcaCommand


class Command(RcaCommand):
    help = 'Graded characters of the simple modules L(E) up to degree N'
    job_name = 'char_l'
    uses_N = True
