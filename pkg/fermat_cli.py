"""Entry script: solve, verify and classify f^m + (R f^(k))^n = Q e^alpha from the command line."""

from src.cli import main

if __name__ == "__main__":
    main()
