from django.contrib import admin

from .models import ComputationJob


@admin.register(ComputationJob)
class ComputationJobAdmin(admin.ModelAdmin):
    list_display = ("id", "command", "status", "certified", "exit_code", "created_at", "finished_at")
    list_filter = ("command", "status", "certified")
    search_fields = ("command", "error_message")
    readonly_fields = ("config", "result", "created_at", "finished_at")
