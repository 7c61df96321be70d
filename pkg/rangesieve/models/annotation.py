from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class RatingScale:
    min: float
    max: float
    label: Optional[str] = None

    @property
    def span(self):
        return self.max - self.min

    def __repr__(self):
        return "<RatingScale(min={self.min!r}, max={self.max!r})>".format(self=self)


@dataclass(frozen=True)
class RangeAnnotation:
    """
    One annotator's acceptable interval for one instance, on the unit scale.
    raw_lower and raw_upper keep the ingested scale values for serialization and take no part in equality.
    """
    instance_id: str
    annotator_id: str
    lower: float
    upper: float
    raw_lower: Optional[float] = field(default=None, compare=False, repr=False)
    raw_upper: Optional[float] = field(default=None, compare=False, repr=False)

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def bounds(self):
        return self.lower, self.upper


@dataclass(frozen=True)
class Instance:
    id: str
    content: str = ""
    context: Optional[str] = None
    group: Optional[str] = None

    def __repr__(self):
        return "<Instance(id={self.id!r})>".format(self=self)
