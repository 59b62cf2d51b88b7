"""Pydantic response models for the tuning service."""

from pydantic import BaseModel


class SessionCreated(BaseModel):
    session_id: str
    width: int
    height: int


class LayersResponse(BaseModel):
    low_png_b64: str
    high_png_b64: str
