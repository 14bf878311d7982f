import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from utils.errors import InputFormatError

ENV_PREFIX = "TREELAB_"


@dataclass(frozen=True)
class LabSettings:
    seed: int = 0
    window: int = 6
    word_bound: int = 4
    cap: int = 10 ** 6
    log_level: str = "WARNING"

    @staticmethod
    def from_env(environ: Optional[Mapping[str, str]] = None) -> "LabSettings":
        environ = os.environ if environ is None else environ
        settings = LabSettings()
        overrides = {}
        for name in ("seed", "window", "word_bound", "cap"):
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                overrides[name] = int(raw)
            except ValueError:
                raise InputFormatError(
                    f"Valeur entière attendue pour {ENV_PREFIX}{name.upper()}: {raw!r}",
                    source="environnement"
                )
        level = environ.get(ENV_PREFIX + "LOG_LEVEL")
        if level:
            overrides["log_level"] = level.upper()
        return replace(settings, **overrides)

    def with_overrides(self, **values) -> "LabSettings":
        return replace(self, **{k: v for k, v in values.items() if v is not None})
