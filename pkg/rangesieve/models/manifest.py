from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: Dict[str, Any]
    input_digests: Dict[str, str]
    seed: Optional[int]
    version: str
    timestamp: str
    argv: List[str] = field(default_factory=list)
    outputs: Dict[str, str] = field(default_factory=dict)
