"""
Domain types for polar codes, fading channels, expansion coding and experiments
"""

from app.models.polar import (
    ERASED,
    ChannelKind,
    ChannelObservation,
    ConstructionRule,
    DesignChannel,
    PolarCodeSpec,
    SCResult,
    SelectionRule,
)
from app.models.fading import (
    CodewordMatrix,
    ErasureColumn,
    FadingProfile,
    HierarchicalCode,
    HierDecodeResult,
    HierMessage,
    PhaseFailure,
    SetPartition,
    TrialOutcome,
)
from app.models.channel import AenProfile, AwgnFadingProfile, Seed, SeedStream
from app.models.expansion import (
    AdderResult,
    AenTrialReport,
    ExpansionDigits,
    ExpansionSpec,
    LevelMode,
    LevelPlan,
    TailBounds,
    GapGuaranteeReport,
)
from app.models.experiment import ExperimentConfig, ExperimentKind

__all__ = [
    # Polar codes
    "ERASED",
    "ChannelKind",
    "SelectionRule",
    "DesignChannel",
    "ConstructionRule",
    "PolarCodeSpec",
    "ChannelObservation",
    "SCResult",
    # Fading BSC
    "FadingProfile",
    "SetPartition",
    "HierarchicalCode",
    "CodewordMatrix",
    "HierMessage",
    "ErasureColumn",
    "PhaseFailure",
    "HierDecodeResult",
    "TrialOutcome",
    # Channels and seeds
    "Seed",
    "SeedStream",
    "AwgnFadingProfile",
    "AenProfile",
    # Expansion coding
    "LevelMode",
    "ExpansionSpec",
    "LevelPlan",
    "ExpansionDigits",
    "AdderResult",
    "TailBounds",
    "GapGuaranteeReport",
    "AenTrialReport",
    # Experiments
    "ExperimentKind",
    "ExperimentConfig",
]
