# Generated by Django 5.0.9 on 2026-10-17 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SimulationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('kind', models.CharField(choices=[('simulate', 'Lattice Monte Carlo'), ('magflow', 'MAG / Monopole Analysis'), ('bps', 'BPS Monopole'), ('vortex', 'Dual GL Vortex'), ('higgsmass', 'Topological Higgs Mass')], max_length=20)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('completed', 'Completed'), ('failed', 'Failed')], default='pending', max_length=20)),
                ('parameters', models.JSONField(blank=True, default=dict, help_text='Resolved run options')),
                ('config_file', models.CharField(blank=True, help_text='Run file the options were read from', max_length=500)),
                ('seed', models.CharField(blank=True, help_text='Unsigned 64-bit run seed, stored as text', max_length=20)),
                ('threads', models.PositiveIntegerField(default=1)),
                ('output_dir', models.CharField(blank=True, max_length=500)),
                ('manifest_path', models.CharField(blank=True, max_length=500)),
                ('summary', models.JSONField(blank=True, default=dict, help_text='Headline numbers of the run')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('started_at', models.DateTimeField(blank=True, null=True)),
                ('completed_at', models.DateTimeField(blank=True, null=True)),
                ('error_class', models.CharField(blank=True, max_length=30)),
                ('error_message', models.TextField(blank=True)),
                ('exit_code', models.PositiveSmallIntegerField(blank=True, null=True)),
            ],
            options={
                'verbose_name': 'Simulation Run',
                'verbose_name_plural': 'Simulation Runs',
                'ordering': ['-created_at'],
            },
        ),
    ]
