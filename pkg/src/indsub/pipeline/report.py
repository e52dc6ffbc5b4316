"""Line-oriented pipeline log."""

from __future__ import annotations

from dataclasses import dataclass, field


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (set, frozenset)):
        return str(len(value))
    return str(value)


@dataclass
class PipelineReport:
    lines: list[str] = field(default_factory=list)

    def stage(self, name: str, **fields) -> None:
        parts = [f"stage {name}"] + [f"{k}={_fmt(v)}" for k, v in fields.items()]
        self.lines.append(" | ".join(parts))

    def note(self, text: str) -> None:
        self.lines.append(text)

    def extend(self, lines, prefix: str = "  ") -> None:
        self.lines.extend(prefix + line for line in lines)

    def stages(self) -> list[str]:
        return [line.split(" | ")[0][6:] for line in self.lines if line.startswith("stage ")]

    def to_text(self) -> str:
        return "\n".join(self.lines) + "\n"


def ensure(report):
    return report if report is not None else PipelineReport()
