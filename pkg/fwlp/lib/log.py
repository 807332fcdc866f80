import logging

logger = logging.getLogger("fwlp")


def setup(level: int = logging.DEBUG) -> logging.Logger:
    """Route the solver log through digiformatter when it is installed.

    `level` applies to the `fwlp` logger only; the root logger stays at INFO.
    Calling this again replaces the handler instead of stacking a second one.
    """
    logging.basicConfig(level=logging.INFO)
    logger.setLevel(level)

    try:
        from digiformatter import logger as digilogger
    except ImportError:
        return logger
    logger.handlers = [digilogger.DigiFormatterHandler()]
    logger.propagate = False
    return logger
