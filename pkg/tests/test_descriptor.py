"""Descriptor: deterministic templates, remote schema gating, offline guarantee."""

import json

import pytest

from designlint.descriptor import (
    Descriptor,
    DescriptorKind,
    DescriptorRequest,
    KEY_ENV,
    URL_ENV,
)
from designlint.errors import DescriptorError, RemoteUnavailableError


def font_review_request(groups=None):
    return DescriptorRequest(
        kind=DescriptorKind.FONT_REVIEW,
        payload={"groups": groups or {
            "p": ["Georgia"], "h1": ["Times New Roman"], "button": ["Arial"],
        }},
    )


class TestDeterministic:
    def test_serif_sans_mix_summary(self):
        response = Descriptor("offline").describe(font_review_request())
        assert response.provenance == "deterministic"
        assert "sans-serif" in response.summary or "mix" in response.summary.lower()
        assert "p" in response.details["issues"]
        assert "h1" in response.details["issues"]
        assert "button" in response.details["passes"]

    def test_color_name_white(self):
        response = Descriptor("offline").describe(
            DescriptorRequest(
                kind=DescriptorKind.COLOR_NAME,
                payload={"color": {"r": 255, "g": 255, "b": 255, "a": 1}},
            )
        )
        assert response.summary == "white"

    def test_referential_transparency(self):
        descriptor = Descriptor("offline")
        first = descriptor.describe(font_review_request())
        second = descriptor.describe(font_review_request())
        assert first is second  # cached per (kind, payload hash)
        fresh = Descriptor("offline").describe(font_review_request())
        assert fresh.summary == first.summary and fresh.details == first.details

    def test_offline_mode_makes_no_network_calls(self, no_network):
        descriptor = Descriptor("offline")
        response = descriptor.describe(font_review_request())
        assert response.provenance == "deterministic"


class TestRemote:
    def test_endpoint_down_falls_back_with_note(self, monkeypatch):
        monkeypatch.setenv(URL_ENV, "http://localhost:1/llm")
        monkeypatch.setenv(KEY_ENV, "test-key")

        import requests

        def boom(*args, **kwargs):
            raise requests.ConnectionError("connection refused")

        monkeypatch.setattr(requests, "post", boom)
        response = Descriptor("auto").describe(font_review_request())
        assert response.provenance == "deterministic"
        assert any("remote descriptor unavailable" in note for note in response.notes)

    def test_endpoint_down_strict_raises(self, monkeypatch):
        monkeypatch.setenv(URL_ENV, "http://localhost:1/llm")

        import requests

        def boom(*args, **kwargs):
            raise requests.ConnectionError("connection refused")

        monkeypatch.setattr(requests, "post", boom)
        with pytest.raises(DescriptorError):
            Descriptor("auto").describe(font_review_request(), strict=True)

    def test_valid_remote_reply_parsed(self, monkeypatch):
        monkeypatch.setenv(URL_ENV, "http://example.test/llm")

        class FakeReply:
            status_code = 200

            def raise_for_status(self):
                pass

            def json(self):
                return {
                    "text": json.dumps(
                        ["Mixed faces hurt consistency.",
                         {"p": "switch to Arial"},
                         {"button": "Arial reads well"}]
                    )
                }

        calls = {}

        def fake_post(url, json=None, headers=None, timeout=None):
            calls["url"] = url
            calls["temperature"] = json["temperature"]
            return FakeReply()

        import requests

        monkeypatch.setattr(requests, "post", fake_post)
        response = Descriptor("auto").describe(font_review_request())
        assert response.provenance == "remote"
        assert response.details["issues"] == {"p": "switch to Arial"}
        assert calls["temperature"] == 0.2

    def test_bad_schema_retries_then_falls_back(self, monkeypatch):
        monkeypatch.setenv(URL_ENV, "http://example.test/llm")
        attempts = []

        class FakeReply:
            def raise_for_status(self):
                pass

            def json(self):
                return {"text": "not a json array"}

        def fake_post(*args, **kwargs):
            attempts.append(1)
            return FakeReply()

        import requests

        monkeypatch.setattr(requests, "post", fake_post)
        response = Descriptor("auto").describe(font_review_request())
        assert len(attempts) == 2  # one retry
        assert response.provenance == "deterministic"

    def test_remote_mode_without_url_raises(self, monkeypatch):
        monkeypatch.delenv(URL_ENV, raising=False)
        with pytest.raises(RemoteUnavailableError):
            Descriptor("remote").describe(font_review_request())


def test_full_pipeline_offline_no_sockets(no_network, fixtures_dir):
    from designlint import ingest_html, run_audit

    snapshot = ingest_html((fixtures_dir / "w1.html").read_text(), source_id="w1")
    report = run_audit(snapshot, descriptor=Descriptor("offline"))
    assert report.total_issues > 0
    assert report.run_meta.descriptor == "deterministic"
