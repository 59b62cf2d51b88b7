"""In-memory session store: LRU-capped, never touches disk."""

from __future__ import annotations

import hashlib
import threading
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Optional

from ..image import Image


@dataclass
class Session:
    """One uploaded image pair, dimension-matched at creation."""

    session_id: str
    image_low: Image
    image_high: Image
    content_digest: str
    created_at: float
    # serializes filter work on the same session
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Thread-safe map of live sessions with least-recently-used eviction."""

    def __init__(self, max_sessions: int = 8) -> None:
        if max_sessions < 1:
            raise ValueError("max_sessions must be >= 1")
        self._max = max_sessions
        self._sessions: "OrderedDict[str, Session]" = OrderedDict()
        self._lock = threading.Lock()

    def create(self, image_low: Image, image_high: Image) -> Session:
        digest = hashlib.sha256(
            image_low.planes.tobytes() + image_high.planes.tobytes()
        ).hexdigest()[:24]
        session = Session(
            session_id=uuid.uuid4().hex,
            image_low=image_low,
            image_high=image_high,
            content_digest=digest,
            created_at=time.time(),
        )
        with self._lock:
            self._sessions[session.session_id] = session
            while len(self._sessions) > self._max:
                self._sessions.popitem(last=False)
        return session

    def get(self, session_id: str) -> Optional[Session]:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None:
                self._sessions.move_to_end(session_id)
            return session

    def delete(self, session_id: str) -> bool:
        with self._lock:
            return self._sessions.pop(session_id, None) is not None

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)
