"""命令行：solve / polygons / gen / validate / bench。"""
