from rca.management.base import RcaCommand


class Command(RcaCommand):
    help = 'Order, hyperplane orbits, irreps and character table of a reflection group'
    job_name = 'describe_group'
