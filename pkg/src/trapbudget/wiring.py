"""Control-electrode co-wiring maps: I/O budget and simultaneous-use conflicts."""

from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import ConfigError
from .trap_model import read_yaml


@dataclass(frozen=True)
class WiringMap:
    """``electrodes`` maps electrode id -> region tag; ``groups`` maps signal id -> member ids."""

    electrodes: dict
    groups: dict
    io_budget: int

    def __post_init__(self):
        if int(self.io_budget) != self.io_budget or self.io_budget <= 0:
            raise ConfigError("must be a positive integer", "io_budget")
        seen = {}
        for signal, members in self.groups.items():
            for e in members:
                if e not in self.electrodes:
                    raise ConfigError(f"unknown electrode {e!r}", f"groups.{signal}")
                if e in seen:
                    raise ConfigError(
                        f"electrode {e!r} is in both {seen[e]!r} and {signal!r}", "groups"
                    )
                seen[e] = signal
        orphans = sorted(set(self.electrodes) - set(seen))
        if orphans:
            raise ConfigError(f"electrodes without a signal: {orphans[:5]}", "groups")

    @property
    def regions(self):
        return set(self.electrodes.values())

    def member_regions(self, signal):
        return {self.electrodes[e] for e in self.groups[signal]}


@dataclass(frozen=True)
class BudgetCheck:
    signals: int
    io_budget: int

    @property
    def margin(self):
        return self.io_budget - self.signals

    @property
    def passed(self):
        return self.margin >= 0


def signal_count(wiring: WiringMap) -> int:
    return len(wiring.groups)


def check_budget(wiring: WiringMap) -> BudgetCheck:
    return BudgetCheck(signal_count(wiring), wiring.io_budget)


def conflict_regions(wiring: WiringMap, active_regions) -> list:
    """Signals that would have to serve two or more active regions at once.

    Returns ``(signal_id, sorted_regions)`` pairs in the map's group order.
    """
    active = set(active_regions)
    unknown = active - wiring.regions
    if unknown:
        raise ConfigError(f"unknown region tags {sorted(unknown)}", "active_regions")
    conflicts = []
    for signal, members in wiring.groups.items():
        hit = {wiring.electrodes[e] for e in members} & active
        if len(hit) >= 2:
            conflicts.append((signal, sorted(hit)))
    return conflicts


def enchilada_wiring(
    n_side=20, side_sections=4, n_center=20, n_junction=35, junctions=6, io_budget=100
) -> WiringMap:
    """Co-wiring of the six-junction trap.

    Each side signal drives one electrode in every side section, each
    junction signal one electrode in every junction; centre electrodes are
    independent.  Multiplicities are parameters because the quoted
    electrode total does not follow from the group sizes alone.
    """
    electrodes, groups = {}, {}
    for i in range(n_side):
        sig = f"side_{i:02d}"
        groups[sig] = []
        for s in range(side_sections):
            eid = f"side{s + 1}_{i:02d}"
            electrodes[eid] = f"side_{s + 1}"
            groups[sig].append(eid)
    for i in range(n_center):
        eid = f"center_{i:02d}"
        electrodes[eid] = "center"
        groups[eid] = [eid]
    for i in range(n_junction):
        sig = f"junction_{i:02d}"
        groups[sig] = []
        for j in range(junctions):
            eid = f"j{j + 1}_{i:02d}"
            electrodes[eid] = f"junction_{j + 1}"
            groups[sig].append(eid)
    return WiringMap(electrodes, {k: tuple(v) for k, v in groups.items()}, io_budget)


def wiring_from_dict(tree: dict) -> WiringMap:
    try:
        electrodes = {str(e["id"]): str(e["region"]) for e in tree["electrodes"]}
        groups = {str(g["signal"]): tuple(str(m) for m in g["members"]) for g in tree["groups"]}
        budget = tree["io_budget"]
    except KeyError as exc:
        raise ConfigError("missing", str(exc.args[0])) from None
    except TypeError:
        raise ConfigError("malformed wiring map") from None
    if len(groups) != len(tree["groups"]):
        raise ConfigError("signal ids must be unique", "groups")
    return WiringMap(electrodes, groups, budget)


def wiring_to_dict(wiring: WiringMap) -> dict:
    return {
        "io_budget": wiring.io_budget,
        "electrodes": [{"id": e, "region": r} for e, r in wiring.electrodes.items()],
        "groups": [{"signal": s, "members": list(m)} for s, m in wiring.groups.items()],
    }


def load_wiring(path) -> WiringMap:
    return wiring_from_dict(read_yaml(Path(path)))


def dump_wiring(wiring: WiringMap, path=None) -> str:
    text = yaml.safe_dump(wiring_to_dict(wiring), sort_keys=False, default_flow_style=None)
    if path is not None:
        Path(path).write_text(text)
    return text
