#!/usr/bin/env python3
"""
Stabilis application entry point.

Importing this module builds the WSGI `app` via `create_app` (configuration
from STABILIS_* environment variables, see app/config). Executed directly it
dispatches to the `stabilis` command group:

    python app.py check --gen path:3 --dmax 3
    python app.py simulate --gen random:6:42 --init random:7 --strategy greedy_adversary
    python app.py serve --port 5000
"""

from app import create_app
from app.cli import main

# Create app instance
app = create_app()

if __name__ == '__main__':
    main()
