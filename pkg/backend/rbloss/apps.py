from django.apps import AppConfig
import logging

logger = logging.getLogger(__name__)

class RblossConfig(AppConfig):
    name = 'rbloss'
    verbose_name = 'Ratio-based losses'

    def ready(self):
        from .catalog import CATALOG
        logger.debug(f"rbloss ready with {len(CATALOG)} catalog entries")
