"""
Logging configuration
"""

import logging
import os
import sys

LOGGER = logging.getLogger(__name__)

PACKAGE = 'pymilnor'

LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

TRUE_VALUES = {'1', 'true', 'yes', 'y'}
FALSE_VALUES = {'0', 'false', 'no', 'n', ''}


def resolve_module(name: str) -> str | None:
    """
    Full name of a loaded module given as a full name ('numpy'), a name
    relative to the package ('foliations.lemma') or the unique last
    components of a package module ('lemma'). None if nothing matches.
    """

    for candidate in (name, f'{PACKAGE}.{name}'):
        if candidate in sys.modules:
            return candidate

    suffix = f'.{name}'
    matches = sorted(mod_name for mod_name in sys.modules
        if mod_name.startswith(f'{PACKAGE}.') and mod_name.endswith(suffix))

    if len(matches) == 1:
        return matches[0]

    if matches:
        LOGGER.warning("Module name %r is ambiguous (%s)", name,
            ', '.join(matches))

    return None


def configure_logging(*, verbose: bool = False) -> None:
    """
    Configure the logging system according to the LOG_DEBUG environment
    variable:
    - If set to '1', 'true', 'yes', 'y', or if verbose is set, all output is
      logged at DEBUG level.
    - If set to '0', 'false', 'no', 'n', '', or not set, the root logger is
      configured at INFO level.
    - If set to a comma-separated list of modules, the root logger is
      configured at INFO level and the listed modules at DEBUG level. Short
      names such as 'geodesics', 'foliations.lemma' or 'lemma' refer to the
      pymilnor modules of that name (see resolve_module).
    Log records go to standard error so that reports written to standard
    output stay machine-readable.
    """

    value = os.environ.get('LOG_DEBUG', '')
    value_lower = value.lower()

    if verbose or value_lower in TRUE_VALUES:
        logging.basicConfig(level=logging.DEBUG, format=LOG_FORMAT,
            stream=sys.stderr)
        return

    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT,
        stream=sys.stderr)

    if value_lower in FALSE_VALUES:
        return

    for mod_name in value.split(','):
        mod_name = mod_name.strip()
        if not mod_name:
            continue

        resolved = resolve_module(mod_name)
        if resolved is None:
            LOGGER.warning("Module %r is not loaded, setting its log "
                "level to DEBUG anyway", mod_name)
            resolved = mod_name

        logging.getLogger(resolved).setLevel(logging.DEBUG)
