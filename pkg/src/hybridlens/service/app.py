"""FastAPI app wrapping the filter library for interactive tuning.

Sessions hold an uploaded image pair in memory; preview endpoints are
pure functions of (session content, query parameters), so identical
requests return byte-identical bodies carrying a strong ETag. Requests
with scale < 1 downscale the inputs before filtering — cost falls with
image size, which is what makes slider-rate interaction possible — and
scale=1 renders the exact full-size hybrid.
"""

from __future__ import annotations

import base64
import hashlib
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, File, Query, Request, Response, UploadFile
from fastapi.responses import JSONResponse

from ..errors import ImageDecodeError, InvalidParameterError, KernelTooLargeError
from ..filters import BlendSpec, highpass, hybrid, lowpass, match_dimensions, visualize_signed
from ..image import Image
from ..image_io import EncodedFormat, load, resize_bilinear, save
from .models import LayersResponse, SessionCreated
from .store import Session, SessionStore

SIGMA_MIN = 0.5
SIGMA_MAX = 30.0

_SIGMA_LOW = Query(default=7.0, ge=SIGMA_MIN, le=SIGMA_MAX)
_SIGMA_HIGH = Query(default=7.0, ge=SIGMA_MIN, le=SIGMA_MAX)
_WEIGHT = Query(default=0.5, ge=0.0, le=1.0)
_SCALE = Query(default=1.0, gt=0.0, le=1.0)


def _error(status: int, reason: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": reason})


def create_app(max_sessions: int = 8, ui_dir: Optional[Path] = None) -> FastAPI:
    """Build the service; ui_dir, when given, is served as static assets."""
    app = FastAPI(title="hybridlens tuner service", version="0.1.0")
    store = SessionStore(max_sessions=max_sessions)
    app.state.store = store

    def _get_session(session_id: str) -> Optional[Session]:
        return store.get(session_id)

    @app.post("/session", response_model=SessionCreated, status_code=201)
    async def create_session(
        image_low: Optional[UploadFile] = File(default=None),
        image_high: Optional[UploadFile] = File(default=None),
    ):
        if image_low is None or image_high is None:
            return _error(400, "both image_low and image_high files are required")
        try:
            low = load(await image_low.read())
            high = load(await image_high.read())
            low, high = match_dimensions(low, high)
        except (ImageDecodeError, InvalidParameterError) as exc:
            return _error(400, str(exc))
        session = store.create(low, high)
        return SessionCreated(
            session_id=session.session_id, width=low.width, height=low.height
        )

    def _scaled_pair(session: Session, scale: float) -> tuple[Image, Image]:
        if scale >= 1.0:
            return session.image_low, session.image_high
        w = max(1, int(session.image_low.width * scale + 0.5))
        h = max(1, int(session.image_low.height * scale + 0.5))
        return (
            resize_bilinear(session.image_low, w, h),
            resize_bilinear(session.image_high, w, h),
        )

    def _etag(session: Session, *params: object) -> str:
        key = session.content_digest + "|" + "|".join(repr(p) for p in params)
        return '"' + hashlib.sha256(key.encode("utf-8")).hexdigest()[:32] + '"'

    @app.get("/session/{session_id}/hybrid")
    def hybrid_preview(
        session_id: str,
        request: Request,
        sigma_low: float = _SIGMA_LOW,
        sigma_high: float = _SIGMA_HIGH,
        weight: float = _WEIGHT,
        mode: Literal["subtract", "log"] = "subtract",
        scale: float = _SCALE,
    ):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        etag = _etag(session, sigma_low, sigma_high, weight, mode, scale)
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        spec = BlendSpec(
            sigma_low=sigma_low, sigma_high=sigma_high, weight=weight, highpass_mode=mode
        )
        with session.lock:
            low_src, high_src = _scaled_pair(session, scale)
            try:
                result = hybrid(low_src, high_src, spec)
            except KernelTooLargeError as exc:
                return _error(422, f"sigma too large for this image at this scale: {exc}")
        return Response(
            content=save(result, EncodedFormat.PNG),
            media_type="image/png",
            headers={"ETag": etag, "Cache-Control": "private, must-revalidate"},
        )

    @app.get("/session/{session_id}/layers", response_model=LayersResponse)
    def layers(
        session_id: str,
        sigma_low: float = _SIGMA_LOW,
        sigma_high: float = _SIGMA_HIGH,
        mode: Literal["subtract", "log"] = "subtract",
    ):
        session = _get_session(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            try:
                low_img = lowpass(session.image_low, sigma_low)
            except KernelTooLargeError as exc:
                return _error(422, f"sigma_low too large for this image: {exc}")
            try:
                high_img = visualize_signed(highpass(session.image_high, sigma_high, mode))
            except KernelTooLargeError as exc:
                return _error(422, f"sigma_high too large for this image: {exc}")
        return LayersResponse(
            low_png_b64=base64.b64encode(save(low_img, EncodedFormat.PNG)).decode("ascii"),
            high_png_b64=base64.b64encode(save(high_img, EncodedFormat.PNG)).decode("ascii"),
        )

    @app.delete("/session/{session_id}", status_code=204)
    def delete_session(session_id: str):
        if not store.delete(session_id):
            return _error(404, "unknown session")
        return Response(status_code=204)

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
