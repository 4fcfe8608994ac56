from django.contrib import admin
from django.urls import path

from rca.views import job_download, job_status

urlpatterns = [
    path('admin/', admin.site.urls),
    # Recorded computation jobs
    path('jobs/<int:pk>/status', job_status, name='job_status'),
    path('jobs/<int:pk>/download', job_download, name='job_download'),
]
