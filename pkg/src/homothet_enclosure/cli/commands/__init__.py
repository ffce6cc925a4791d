"""子命令模块；每个模块提供 register(subparsers)。"""
from homothet_enclosure.cli.commands import bench, gen, solve, validate

COMMANDS = (solve, gen, validate, bench)
