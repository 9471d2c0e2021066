"""Request bodies of the HTTP API."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

RatingToken = Literal["full", "partial", "none"]


class CreateAssessmentRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    catalog_fingerprint: str
    subject: str


class PutRatingRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rating: RatingToken
    expected_revision: int = Field(ge=0)


class WhatIfRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    overlay: dict[str, RatingToken]


class CombineRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ids: list[str] = Field(min_length=1)


class CreateProjectRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str


class AdvanceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    artifact: dict[str, Any]


class ResolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    outcome: Literal["accept", "iterate"]
    assessments: list[str] = Field(default_factory=list)


class ScreeningProfileBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    certifications: int = Field(ge=0)
    industry40_references: int = Field(ge=0)
    documented_topics: list[Literal["authentication", "encryption", "user_management"]]
    matched_keywords: list[Literal["remote access", "IoT", "Industry 4.0"]]


class ScreeningRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    profile: ScreeningProfileBody
