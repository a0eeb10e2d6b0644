# Core module - contains config and errors
