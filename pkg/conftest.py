"""Run the Django test suites under pytest.

Mirrors core.test_runner.EklabTestRunner: tests tagged ``slow`` are
skipped unless ``EKLAB_SLOW_TESTS=1``.
"""
import os

import django
import pytest

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'eklab.settings')
django.setup()


def pytest_collection_modifyitems(config, items):
    if os.environ.get('EKLAB_SLOW_TESTS') == '1':
        return
    skip_slow = pytest.mark.skip(reason='slow; set EKLAB_SLOW_TESTS=1 to run')
    for item in items:
        tags = set(getattr(getattr(item, 'obj', None), 'tags', ()))
        tags |= set(getattr(getattr(item, 'cls', None), 'tags', ()))
        if 'slow' in tags:
            item.add_marker(skip_slow)
