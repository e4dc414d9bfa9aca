import os

from django.test.runner import DiscoverRunner


class EklabTestRunner(DiscoverRunner):
    """Excludes tests tagged ``slow`` unless ``EKLAB_SLOW_TESTS=1``."""

    def __init__(self, *args, exclude_tags=None, **kwargs):
        exclude_tags = set(exclude_tags or ())
        if os.environ.get('EKLAB_SLOW_TESTS') != '1':
            exclude_tags.add('slow')
        super().__init__(*args, exclude_tags=exclude_tags, **kwargs)
