import logging
import os
from datetime import datetime

import config


def setup_logger():
    handlers = [logging.StreamHandler()]

    if config.LOG_TO_FILE:
        log_filename = os.path.join(
            config.LOGS_DIR,
            f"solve_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
        )
        handlers.append(logging.FileHandler(log_filename))

    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers
    )

    return logging.getLogger('screened_coulomb')

logger = setup_logger()
