from django.db import models
from django.utils import timezone


class SimulationRun(models.Model):
    """One invocation of a dualmeissner command and where its outputs went."""

    KIND_CHOICES = [
        ('simulate', 'Lattice Monte Carlo'),
        ('magflow', 'MAG / Monopole Analysis'),
        ('bps', 'BPS Monopole'),
        ('vortex', 'Dual GL Vortex'),
        ('higgsmass', 'Topological Higgs Mass'),
    ]

    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('completed', 'Completed'),
        ('failed', 'Failed'),
    ]

    kind = models.CharField(max_length=20, choices=KIND_CHOICES)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='pending')

    # Inputs
    parameters = models.JSONField(default=dict, blank=True, help_text="Resolved run options")
    config_file = models.CharField(max_length=500, blank=True, help_text="Run file the options were read from")
    seed = models.CharField(max_length=20, blank=True, help_text="Unsigned 64-bit run seed, stored as text")
    threads = models.PositiveIntegerField(default=1)

    # Outputs
    output_dir = models.CharField(max_length=500, blank=True)
    manifest_path = models.CharField(max_length=500, blank=True)
    summary = models.JSONField(default=dict, blank=True, help_text="Headline numbers of the run")

    # Timestamps
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)
    started_at = models.DateTimeField(null=True, blank=True)
    completed_at = models.DateTimeField(null=True, blank=True)

    # Error handling
    error_class = models.CharField(max_length=30, blank=True)
    error_message = models.TextField(blank=True)
    exit_code = models.PositiveSmallIntegerField(null=True, blank=True)

    class Meta:
        ordering = ['-created_at']
        verbose_name = 'Simulation Run'
        verbose_name_plural = 'Simulation Runs'

    def __str__(self):
        return f"{self.get_kind_display()} #{self.pk} - {self.get_status_display()}"

    def mark_running(self, output_dir):
        self.status = 'running'
        self.output_dir = str(output_dir)
        self.started_at = timezone.now()
        self.save()

    def mark_completed(self, manifest_path, summary=None):
        """Mark the run as completed"""
        self.status = 'completed'
        self.manifest_path = str(manifest_path)
        self.summary = summary or {}
        self.exit_code = 0
        self.completed_at = timezone.now()
        self.save()

    def mark_failed(self, error, manifest_path=None):
        """Mark the run as failed with the error's class, message and exit code"""
        self.status = 'failed'
        self.error_class = getattr(error, 'error_class', 'error')
        self.error_message = getattr(error, 'message', str(error))
        self.exit_code = getattr(error, 'exit_code', 1)
        if manifest_path:
            self.manifest_path = str(manifest_path)
        self.completed_at = timezone.now()
        self.save()

    @property
    def duration_seconds(self):
        if self.started_at and self.completed_at:
            return (self.completed_at - self.started_at).total_seconds()
        return None
