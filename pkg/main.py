"""Entry point: ``python main.py <subcommand> ...``."""
from radaff.cli import main

if __name__ == "__main__":
    main()
