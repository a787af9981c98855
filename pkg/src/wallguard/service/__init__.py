from .config import ServiceConfig, load_config
from .core import (
    ManagerAction,
    MessageStatus,
    ModerationService,
    StoredMessage,
    Wall,
)
from .events import EventLog

__all__ = [
    "EventLog",
    "ManagerAction",
    "MessageStatus",
    "ModerationService",
    "ServiceConfig",
    "StoredMessage",
    "Wall",
    "load_config",
]
