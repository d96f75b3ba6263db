import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "modfunctor.settings")
django.setup()
