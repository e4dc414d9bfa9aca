import platform
import time
from dataclasses import dataclass, field
from pathlib import Path

import eklab

from .output import file_digest, write_json


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    workers: int
    version: str = eklab.__version__
    wall_time: float = 0.0
    status: str = 'ok'
    outputs: dict = field(default_factory=dict)

    def record(self, path):
        path = Path(path)
        self.outputs[str(path)] = file_digest(path)

    def as_dict(self):
        return {
            'subcommand': self.subcommand,
            'parameters': self.parameters,
            'workers': self.workers,
            'version': self.version,
            'python': platform.python_version(),
            'wall_time': round(self.wall_time, 3),
            'status': self.status,
            'outputs': dict(sorted(self.outputs.items())),
        }

    def write(self, path):
        return write_json(path, self.as_dict())


class Stopwatch:
    elapsed = 0.0

    def __enter__(self):
        self.start = time.perf_counter()
        self.elapsed = 0.0
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False
