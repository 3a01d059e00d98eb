"""命令行入口点"""

from relplaus.cli.main import main

if __name__ == "__main__":
    main()
