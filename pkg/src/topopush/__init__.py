"""Clear a path to a target on a cluttered shelf by pushing persistent groups of obstacles."""

from .geometry import GeometryError, Point2, Pose2, Rect, Workspace
from .path_region import Configuration, PathRegion, is_cleared, path_region
from .persistence import PersistenceDiagram, components_at, persistent_radii, zero_dim_persistence
from .planners import Outcome, PushPlan, ooa, phia, phis
from .scenario import Scene, load_scene, save_scene

__version__ = "0.1.0"
