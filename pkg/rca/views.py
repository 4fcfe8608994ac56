import logging

from django.contrib.auth.decorators import login_required
from django.http import Http404, HttpResponse, JsonResponse
from django.urls import reverse

from .exporters import CONTENT_TYPES, render
from .models import ComputationJob

logger = logging.getLogger(__name__)


@login_required
def job_status(request, pk: int):
    try:
        job = ComputationJob.objects.get(pk=pk)
    except ComputationJob.DoesNotExist:
        raise Http404
    finished = job.status in ('done', 'uncertified') and job.result is not None
    return JsonResponse({
        'ok': True,
        'command': job.command,
        'status': job.status,
        'certified': job.certified,
        'exit_code': job.exit_code,
        'error': job.error_message,
        'duration_seconds': job.duration_seconds,
        'download_url': reverse('job_download', args=[job.pk]) if finished else None,
    })


@login_required
def job_download(request, pk: int):
    try:
        job = ComputationJob.objects.get(pk=pk)
    except ComputationJob.DoesNotExist:
        raise Http404
    if job.result is None:
        raise Http404
    fmt = request.GET.get('format', 'json')
    if fmt not in CONTENT_TYPES:
        return JsonResponse({'ok': False, 'error': f"unknown format {fmt!r}"}, status=400)
    data, ctype, ext = render(job.result, fmt)
    logger.debug("serving job %s as %s (%d bytes)", job.pk, fmt, len(data))
    resp = HttpResponse(data, content_type=ctype)
    resp['Content-Disposition'] = f'attachment; filename="{job.command}_{job.pk}.{ext}"'
    return resp
