from django.conf import settings


def eklab_setting(name, value=None):
    """Return ``value`` unless it is None, else ``settings.EKLAB[name]``."""
    if value is not None:
        return value
    return settings.EKLAB[name]
