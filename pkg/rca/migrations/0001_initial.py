from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='ComputationJob',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(choices=[('describe_group', 'Describe group'), ('c_function', 'c-function'), ('blocks', 'Blocks'), ('char_l', 'Simple characters'), ('decomp', 'Decomposition matrices'), ('kz', 'KZ monodromy')], max_length=20)),
                ('config', models.JSONField(blank=True, default=dict)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('done', 'Done'), ('error', 'Error'), ('uncertified', 'Uncertified')], default='pending', max_length=12)),
                ('result', models.JSONField(blank=True, null=True)),
                ('exit_code', models.PositiveSmallIntegerField(default=0)),
                ('certified', models.BooleanField(default=True)),
                ('error_message', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
    ]
