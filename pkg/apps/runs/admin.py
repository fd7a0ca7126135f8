from django.contrib import admin
from .models import SimulationRun


@admin.register(SimulationRun)
class SimulationRunAdmin(admin.ModelAdmin):
    list_display = ['id', 'kind', 'status', 'seed', 'threads', 'created_at', 'completed_at']
    list_filter = ['kind', 'status', 'created_at']
    search_fields = ['output_dir', 'config_file', 'error_message']
    readonly_fields = ['created_at', 'updated_at', 'started_at', 'completed_at']

    fieldsets = (
        ('Basic Information', {
            'fields': ('kind', 'status', 'seed', 'threads')
        }),
        ('Inputs', {
            'fields': ('config_file', 'parameters')
        }),
        ('Outputs', {
            'fields': ('output_dir', 'manifest_path', 'summary')
        }),
        ('Timestamps', {
            'fields': ('created_at', 'updated_at', 'started_at', 'completed_at'),
            'classes': ('collapse',)
        }),
        ('Error Information', {
            'fields': ('error_class', 'error_message', 'exit_code'),
            'classes': ('collapse',)
        })
    )
