import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ksphere.settings')
django.setup()
