"""Log-only electrofacies workflow.

LAS 2.0 ingestion, quality control, porosity estimation, from-scratch
K-means electrofacies clustering with k-selection diagnostics, GR-ordered
facies labeling with continuity statistics, a synthetic well generator
for validation, and CSV/SVG report emission.
"""

from .cluster import (
    ClusterModel,
    KmeansConfig,
    KSelectionReport,
    adjusted_rand_index,
    inertia_curve,
    kmeans_fit,
    mean_silhouette,
    select_k,
    silhouette_values,
)
from .config import PipelineConfig, load_config, load_well_spec
from .errors import (
    ConfigError,
    DegenerateSpreadError,
    InputError,
    LasParseError,
    LogFaciesError,
    MissingCurveError,
    NonFiniteDataError,
    NumericError,
    ZeroVarianceError,
)
from .facies import (
    ContinuityStats,
    FaciesColumn,
    FaciesScheme,
    assign_labels,
    continuity_stats,
    facies_summaries,
)
from .las import (
    CurveSelection,
    CurveSet,
    parse_las,
    slice_depth,
    write_las,
)
from .pipeline import RunResult, run_pipeline
from .porosity import (
    PetroParams,
    PorosityProfile,
    average_porosity,
    density_porosity,
    neutron_porosity,
    porosity_profile,
)
from .qc import (
    FeatureMatrix,
    QcAudit,
    QcConfig,
    remove_washout,
    run_qc,
    screen_outliers,
    standardize,
)
from .report import (
    CrossplotSpec,
    KdeGrid,
    density_level_for_mass,
    emit_figures,
    grid_mass,
    kde2d,
)
from .synth import (
    ArtifactManifest,
    FaciesSpec,
    WellSpec,
    default_well_spec,
    generate_well,
    inject_artifacts,
)

__version__ = "0.1.0"

__all__ = [
    "ArtifactManifest",
    "ClusterModel",
    "ConfigError",
    "ContinuityStats",
    "CrossplotSpec",
    "CurveSelection",
    "CurveSet",
    "DegenerateSpreadError",
    "FaciesColumn",
    "FaciesScheme",
    "FaciesSpec",
    "FeatureMatrix",
    "InputError",
    "KdeGrid",
    "KmeansConfig",
    "KSelectionReport",
    "LasParseError",
    "LogFaciesError",
    "MissingCurveError",
    "NonFiniteDataError",
    "NumericError",
    "PetroParams",
    "PipelineConfig",
    "PorosityProfile",
    "QcAudit",
    "QcConfig",
    "RunResult",
    "WellSpec",
    "ZeroVarianceError",
    "adjusted_rand_index",
    "assign_labels",
    "average_porosity",
    "continuity_stats",
    "default_well_spec",
    "density_level_for_mass",
    "density_porosity",
    "emit_figures",
    "facies_summaries",
    "generate_well",
    "grid_mass",
    "inertia_curve",
    "inject_artifacts",
    "kde2d",
    "kmeans_fit",
    "load_config",
    "load_well_spec",
    "mean_silhouette",
    "neutron_porosity",
    "parse_las",
    "porosity_profile",
    "remove_washout",
    "run_pipeline",
    "run_qc",
    "screen_outliers",
    "select_k",
    "silhouette_values",
    "slice_depth",
    "standardize",
    "write_las",
]
