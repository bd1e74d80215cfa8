"""Configuration and version information for HarmonicFlow."""

__version__ = "0.4.0"

__config_file__ = "harmonicflow.ini"
__log_file__ = "harmonicflow.log"
__output_root_env__ = "HARMONICFLOW_OUTPUT_ROOT"
__report_schema_version__ = 1
