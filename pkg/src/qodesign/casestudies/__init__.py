"""Worked examples built on the engine: a tracking pipeline and a UAV sizing study."""

from .tracking import (
    PROC_COST,
    SENSOR_COST,
    tracking_bool_model,
    tracking_model,
    tracking_pareto,
)
from .uav import (
    ActuatorSpec,
    BatterySpec,
    UavTaskSpec,
    default_actuators,
    default_batteries,
    restricted_uav_cost,
    uav_consistency_report,
    uav_cost_model,
    uav_powerset_model,
)
from .report import SizeEntry, size_report

__all__ = [
    "ActuatorSpec",
    "BatterySpec",
    "PROC_COST",
    "SENSOR_COST",
    "SizeEntry",
    "UavTaskSpec",
    "default_actuators",
    "default_batteries",
    "restricted_uav_cost",
    "size_report",
    "tracking_bool_model",
    "tracking_model",
    "tracking_pareto",
    "uav_consistency_report",
    "uav_cost_model",
    "uav_powerset_model",
]
