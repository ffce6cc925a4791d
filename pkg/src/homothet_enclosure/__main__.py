"""python -m homothet_enclosure 启动命令行。"""

from homothet_enclosure.cli.app import main

if __name__ == "__main__":
    raise SystemExit(main())
