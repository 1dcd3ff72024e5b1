import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    # Logging Configuration
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FILE = os.getenv('LOG_FILE', '')

    # Batch Configuration
    DEFAULT_JOBS = int(os.getenv('MAMMOEDGE_JOBS', 1))
    DEFAULT_OUTPUT_DIR = os.getenv('MAMMOEDGE_OUTPUT_DIR', 'results')
    DEFAULT_RUN_CONFIG = os.getenv('MAMMOEDGE_CONFIG', '')

    # Dataset Configuration
    MIAS_DIR = os.getenv('MIAS_DIR', '')

    @classmethod
    def validate(cls):
        """Validate process configuration"""
        problems = []

        if cls.LOG_LEVEL.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            problems.append(f"LOG_LEVEL={cls.LOG_LEVEL}")

        if cls.DEFAULT_JOBS < 1:
            problems.append(f"MAMMOEDGE_JOBS={cls.DEFAULT_JOBS}")

        if cls.DEFAULT_RUN_CONFIG and not os.path.isfile(cls.DEFAULT_RUN_CONFIG):
            problems.append(f"MAMMOEDGE_CONFIG={cls.DEFAULT_RUN_CONFIG}")

        if problems:
            raise ValueError(f"Invalid configuration: {', '.join(problems)}")

        return True
