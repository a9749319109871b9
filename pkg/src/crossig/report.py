from __future__ import annotations


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return sorted((_plain(v) for v in value), key=repr)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


class Report:
    """Violation list; by default keeps only the first (smallest) witness per check."""

    def __init__(self, first_only: bool = True):
        self.first_only = first_only
        self.items: list[dict] = []
        self._seen: set[str] = set()
        self.stats: dict = {}

    def add(self, check: str, witness=(), detail: str = "") -> None:
        if self.first_only and check in self._seen:
            return
        self._seen.add(check)
        self.items.append({"check": check, "witness": _plain(witness), "detail": detail})

    def extend(self, other: "Report", prefix: str = "") -> None:
        for item in other.items:
            self.add(prefix + item["check"], item["witness"], item["detail"])
        for key, value in other.stats.items():
            self.stats[prefix + key] = value

    def has(self, check: str) -> bool:
        return any(item["check"] == check or item["check"].endswith(":" + check) for item in self.items)

    @property
    def ok(self) -> bool:
        return not self.items

    def checks(self) -> list[str]:
        return [item["check"] for item in self.items]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": self.items, "stats": _plain(self.stats)}

    def __repr__(self) -> str:
        return f"Report(ok={self.ok}, violations={self.items[:5]})"
