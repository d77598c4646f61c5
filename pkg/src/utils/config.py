import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    # =============================================================================
    # LOGGING
    # =============================================================================
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")
    LOG_FILE: str = os.getenv("LOG_FILE", "")

    # =============================================================================
    # COMPUTATION DEFAULTS
    # =============================================================================
    DEFAULT_DEGREE: int = int(os.getenv("DEFAULT_DEGREE", "3"))
    MAX_DEGREE: int = int(os.getenv("MAX_DEGREE", "8"))
    DEFAULT_OUTPUT_FORMAT: str = os.getenv("DEFAULT_OUTPUT_FORMAT", "text")

    # =============================================================================
    # RANDOMIZED IDENTITY CHECKS
    # =============================================================================
    RANDOM_SEED: int = int(os.getenv("RANDOM_SEED", "20240101"))
    RANDOM_CASES: int = int(os.getenv("RANDOM_CASES", "50"))
    RANDOM_MAX_TERMS: int = int(os.getenv("RANDOM_MAX_TERMS", "3"))

    # =============================================================================
    # REPORTING
    # =============================================================================
    ENABLE_TIMING: bool = os.getenv("ENABLE_TIMING", "False").lower() == "true"

    @classmethod
    def validate_config(cls) -> bool:
        """Validate that the numeric settings are in range."""
        problems = []
        if cls.DEFAULT_DEGREE < 1:
            problems.append("DEFAULT_DEGREE must be >= 1")
        if cls.MAX_DEGREE < cls.DEFAULT_DEGREE:
            problems.append("MAX_DEGREE must be >= DEFAULT_DEGREE")
        if cls.RANDOM_CASES < 1:
            problems.append("RANDOM_CASES must be >= 1")
        if cls.RANDOM_MAX_TERMS < 1:
            problems.append("RANDOM_MAX_TERMS must be >= 1")
        if cls.DEFAULT_OUTPUT_FORMAT not in ("text", "json"):
            problems.append("DEFAULT_OUTPUT_FORMAT must be 'text' or 'json'")

        if problems:
            for problem in problems:
                print(f"Invalid configuration: {problem}")
            return False

        return True

    @classmethod
    def get_config_summary(cls) -> dict:
        """Get a summary of current configuration for debugging."""
        return {
            "log_level": cls.LOG_LEVEL,
            "log_file": cls.LOG_FILE or None,
            "degrees": {"default": cls.DEFAULT_DEGREE, "max": cls.MAX_DEGREE},
            "output_format": cls.DEFAULT_OUTPUT_FORMAT,
            "random": {
                "seed": cls.RANDOM_SEED,
                "cases": cls.RANDOM_CASES,
                "max_terms": cls.RANDOM_MAX_TERMS,
            },
            "timing": cls.ENABLE_TIMING,
        }


# Create singleton instance
config = Config()
