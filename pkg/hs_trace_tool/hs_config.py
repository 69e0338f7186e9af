#!/usr/bin/env python3
"""
HS Trace Configuration Management
User defaults for arithmetic mode, tolerances, suite budgets and output
"""

import copy
import json
import os
import sys
from typing import Any, Dict, Optional

# Default configuration
DEFAULT_CONFIG = {
    "arithmetic_settings": {
        "mode": "rational",
        "tol": 1e-9
    },
    "suite_settings": {
        "trials": 100,
        "seed": 0,
        "max_workers": None,  # auto
        "time_budget_s": 300,
        "memory_budget_mb": 2048
    },
    "output_settings": {
        "format": "json",
        "verbose": False,
        "quiet": False,
        "progress": True
    }
}

# argparse destination -> (section, key)
ARG_BINDINGS = {
    "mode": ("arithmetic_settings", "mode"),
    "tol": ("arithmetic_settings", "tol"),
    "trials": ("suite_settings", "trials"),
    "seed": ("suite_settings", "seed"),
    "max_workers": ("suite_settings", "max_workers"),
    "time_budget": ("suite_settings", "time_budget_s"),
    "memory_budget": ("suite_settings", "memory_budget_mb"),
    "output": ("output_settings", "format"),
}

# Flags that can only switch a setting on
FLAG_BINDINGS = {
    "verbose": ("output_settings", "verbose"),
    "quiet": ("output_settings", "quiet"),
}


class HSConfig:
    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or self._get_default_config_path()
        self.config = copy.deepcopy(DEFAULT_CONFIG)
        self.load_config()

    def _safe_print(self, text, stream=None):
        """Print text with fallback for Unicode issues on Windows"""
        stream = stream or sys.stdout
        try:
            print(text, file=stream)
        except UnicodeEncodeError:
            safe_text = text.encode('ascii', 'ignore').decode('ascii')
            print(safe_text, file=stream)

    def _get_default_config_path(self) -> str:
        """Get the default configuration file path"""
        if sys.platform.startswith('win'):
            config_dir = os.path.join(os.environ.get("LOCALAPPDATA", os.path.expanduser("~\\AppData\\Local")), "HS-Trace")
        elif sys.platform.startswith('darwin'):
            config_dir = os.path.expanduser("~/Library/Application Support/HS-Trace")
        else:
            config_dir = os.path.expanduser("~/.config/hs-trace")
        return os.path.join(config_dir, "config.json")

    def load_config(self) -> bool:
        """Load configuration from file"""
        if not os.path.exists(self.config_path):
            return False

        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                saved_config = json.load(f)
            if not isinstance(saved_config, dict):
                raise ValueError("top level must be a JSON object")

            # Merge saved config with defaults (preserves new defaults for missing keys)
            self._merge_config(self.config, saved_config)
            return True

        except (json.JSONDecodeError, IOError, ValueError) as e:
            self._safe_print(f"⚠️ Warning: Could not load config from {self.config_path}: {e}", sys.stderr)
            return False

    def save_config(self) -> bool:
        """Save current configuration to file"""
        try:
            os.makedirs(os.path.dirname(os.path.abspath(self.config_path)), exist_ok=True)

            with open(self.config_path, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, indent=2)

            return True

        except IOError as e:
            self._safe_print(f"❌ Error: Could not save config to {self.config_path}: {e}", sys.stderr)
            return False

    def _merge_config(self, base: Dict[str, Any], update: Dict[str, Any]) -> None:
        """Recursively merge configuration dictionaries"""
        for key, value in update.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._merge_config(base[key], value)
            else:
                base[key] = value

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """Get a configuration value"""
        return self.config.get(section, {}).get(key, default)

    def set(self, section: str, key: str, value: Any) -> None:
        """Set a configuration value"""
        if section not in self.config:
            self.config[section] = {}
        self.config[section][key] = value

    def get_section(self, section: str) -> Dict[str, Any]:
        """Get an entire configuration section"""
        return self.config.get(section, {})

    def update_from_args(self, args) -> None:
        """Update configuration from command line arguments given explicitly"""
        for dest, (section, key) in ARG_BINDINGS.items():
            value = getattr(args, dest, None)
            if value is not None:
                self.set(section, key, value)
        for dest, (section, key) in FLAG_BINDINGS.items():
            if getattr(args, dest, False):
                self.set(section, key, True)
        if getattr(args, 'no_progress', False):
            self.set('output_settings', 'progress', False)

    def apply_to_args(self, args) -> None:
        """Fill in arguments the user did not give: config file first, then defaults"""
        for dest, (section, key) in ARG_BINDINGS.items():
            if hasattr(args, dest) and getattr(args, dest) is None:
                value = self.get(section, key)
                setattr(args, dest, value if value is not None else DEFAULT_CONFIG[section][key])
        for dest, (section, key) in FLAG_BINDINGS.items():
            if hasattr(args, dest) and not getattr(args, dest):
                setattr(args, dest, bool(self.get(section, key, DEFAULT_CONFIG[section][key])))
        if hasattr(args, 'no_progress') and not args.no_progress:
            args.no_progress = not self.get('output_settings', 'progress', True)

    def print_config(self, section: Optional[str] = None) -> None:
        """Print current configuration, or a single section of it"""
        self._safe_print("📋 Current Configuration:")
        self._safe_print(f"  Config file: {self.config_path}")
        self._safe_print("")

        if section is not None:
            if section not in self.config:
                raise ValueError(f"Unknown section {section!r} (expected one of {', '.join(self.config)})")
            sections = {section: self.get_section(section)}
        else:
            sections = self.config

        for section, values in sections.items():
            if not isinstance(values, dict):
                continue
            self._safe_print(f"[{section}]")
            for key, value in values.items():
                self._safe_print(f"  {key} = {value}")
            self._safe_print("")

    def reset_to_defaults(self) -> None:
        """Reset configuration to defaults"""
        self.config = copy.deepcopy(DEFAULT_CONFIG)

    def create_sample_config(self, path: Optional[str] = None) -> str:
        """Create a sample configuration file"""
        sample_path = path or "hs-trace-config-sample.json"

        sample_config = copy.deepcopy(DEFAULT_CONFIG)
        sample_config["_comment"] = {
            "description": "HS Trace Tool Configuration",
            "usage": "Copy to ~/.config/hs-trace/config.json and modify as needed"
        }

        try:
            with open(sample_path, 'w', encoding='utf-8') as f:
                json.dump(sample_config, f, indent=2)

            return sample_path

        except IOError as e:
            self._safe_print(f"❌ Error creating sample config: {e}", sys.stderr)
            return ""
