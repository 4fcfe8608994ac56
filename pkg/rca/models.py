from django.db import models


class ComputationJob(models.Model):
    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('done', 'Done'),
        ('error', 'Error'),
        ('uncertified', 'Uncertified'),
    ]
    COMMAND_CHOICES = [
        ('describe_group', 'Describe group'),
        ('c_function', 'c-function'),
        ('blocks', 'Blocks'),
        ('char_l', 'Simple characters'),
        ('decomp', 'Decomposition matrices'),
        ('kz', 'KZ monodromy'),
    ]
    command = models.CharField(max_length=20, choices=COMMAND_CHOICES)
    config = models.JSONField(default=dict, blank=True)
    status = models.CharField(max_length=12, choices=STATUS_CHOICES, default='pending')
    result = models.JSONField(null=True, blank=True)
    exit_code = models.PositiveSmallIntegerField(default=0)
    certified = models.BooleanField(default=True)
    error_message = models.TextField(blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ['-created_at', '-id']

    def __str__(self):
        return f"#{self.pk} {self.command} [{self.status}]"

    @property
    def duration_seconds(self):
        if self.finished_at and self.created_at:
            return (self.finished_at - self.created_at).total_seconds()
        return None
