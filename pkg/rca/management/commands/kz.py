from rca.management.base import RcaCommand


class Command(RcaCommand):
    help = 'Monodromy of the KZ connection: braid generator matrices, Hecke and braid residuals'
    job_name = 'kz'
    uses_numerics = True
