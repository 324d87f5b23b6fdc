from .experiment import experiment_config
