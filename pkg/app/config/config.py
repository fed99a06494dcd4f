"""
Application Configuration

FLOW OVERVIEW
- Config.__init__
  • Reads STABILIS_ENV to select which .env file to load (dev/prod). Testing bypasses file load.
- Properties expose configuration values, defaulting to desk-scale safe defaults.
- to_mapping() → flat dict handed to Flask's app.config.
"""

import os
from dotenv import load_dotenv


class Config:
    """Base configuration class"""

    def __init__(self):
        # Load environment variables based on STABILIS_ENV
        env_file = os.getenv('STABILIS_ENV', 'development')
        if env_file == 'testing':
            # For testing, don't load config files, use environment variables directly
            pass
        elif env_file == 'production':
            load_dotenv('config.prod.env')
        else:
            load_dotenv('config.env')  # Default to development

    @property
    def LOG_LEVEL(self):
        """Logging level name (DEBUG, INFO, WARNING, ...)"""
        return os.getenv('STABILIS_LOG', 'WARNING').upper()

    @property
    def JOBS(self):
        """Worker processes for monitor checks"""
        return int(os.getenv('STABILIS_JOBS', 1))

    @property
    def MAX_STEPS(self):
        """Step cap for simulated executions"""
        return int(os.getenv('STABILIS_MAX_STEPS', 100000))

    @property
    def MAX_STATES(self):
        """Configuration cap for exhaustive exploration"""
        return int(os.getenv('STABILIS_MAX_STATES', 10 ** 7))

    @property
    def DEFAULT_D_MAX(self):
        """Largest initial d value enumerated by check"""
        return int(os.getenv('STABILIS_D_MAX', 3))

    @property
    def GREEDY_SAMPLE_LIMIT(self):
        """Candidate activation sets scored per greedy adversary step"""
        return int(os.getenv('STABILIS_GREEDY_SAMPLES', 256))

    @property
    def API_MAX_NODES(self):
        """Largest network accepted by POST /api/check"""
        return int(os.getenv('STABILIS_API_MAX_NODES', 5))

    @property
    def API_MAX_D_MAX(self):
        """Largest d_max accepted by POST /api/check"""
        return int(os.getenv('STABILIS_API_MAX_D_MAX', 4))

    @property
    def API_MAX_NETWORK_NODES(self):
        """Largest network accepted by POST /api/simulate and /api/potential"""
        return int(os.getenv('STABILIS_API_MAX_NETWORK_NODES', 256))

    def to_mapping(self):
        return {
            name: getattr(self, name)
            for name in ('LOG_LEVEL', 'JOBS', 'MAX_STEPS', 'MAX_STATES', 'DEFAULT_D_MAX',
                         'GREEDY_SAMPLE_LIMIT', 'API_MAX_NODES', 'API_MAX_D_MAX',
                         'API_MAX_NETWORK_NODES')
        }
