"""Text-completion HTTP client used to fill in missing responses.

All network traffic goes through an injected transport so tests can run
entirely offline against scripted replies. Secrets are read from the
environment at call time and must never leak into diagnostics; every
message that could embed external text is scrubbed first.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Protocol, Sequence

from .dataset import EvalRecord


class CompletionError(Exception):
    """Base class for generation failures."""


class CredentialError(CompletionError):
    """Missing key, or the endpoint rejected it (401/403). Not retried."""


class RateLimitError(CompletionError):
    """HTTP 429 persisted through every configured retry."""


class TransportError(CompletionError):
    """Network failure or timeout persisted through every retry."""


class ProtocolError(CompletionError):
    """The endpoint answered with a payload we cannot interpret."""


class ApiError(CompletionError):
    """Any other non-success HTTP status."""


class TransportFailure(Exception):
    """Raised by transports for network-level problems; retried upstream."""


@dataclass(frozen=True)
class RetryPolicy:
    """attempts counts total tries; sleep grows as backoff_base * 2**i."""

    attempts: int = 3
    backoff_base: float = 0.5

    def __post_init__(self) -> None:
        if self.attempts < 1:
            raise ValueError(f"attempts must be >= 1, got {self.attempts}")
        if self.backoff_base < 0.0:
            raise ValueError(
                f"backoff_base must be >= 0, got {self.backoff_base}")


@dataclass(frozen=True)
class CompletionConfig:
    base_url: str = "https://api.openai.com/v1"
    model: str = "text-davinci-003"
    max_tokens: int = 256
    temperature: float = 0.7
    api_key_env: str = "OPENAI_API_KEY"
    max_concurrent: int = 1
    retry: RetryPolicy = field(default_factory=RetryPolicy)
    timeout: float = 30.0

    def __post_init__(self) -> None:
        if self.max_tokens < 1:
            raise ValueError(f"max_tokens must be >= 1, got {self.max_tokens}")
        if self.temperature < 0.0:
            raise ValueError(
                f"temperature must be >= 0, got {self.temperature}")
        if self.max_concurrent < 1:
            raise ValueError(
                f"max_concurrent must be >= 1, got {self.max_concurrent}")
        if self.timeout <= 0.0:
            raise ValueError(f"timeout must be > 0, got {self.timeout}")


@dataclass(frozen=True)
class HttpReply:
    status: int
    body: bytes


class Transport(Protocol):
    """Minimal request executor: one POST, one reply."""

    def post(self, url: str, headers: Mapping[str, str], body: bytes,
             timeout: float) -> HttpReply: ...


class RequestsTransport:
    """Production transport; everything else in this module is offline."""

    def post(self, url: str, headers: Mapping[str, str], body: bytes,
             timeout: float) -> HttpReply:
        import requests

        try:
            response = requests.post(url, headers=dict(headers), data=body,
                                     timeout=timeout)
        except requests.RequestException as exc:
            raise TransportFailure(f"{type(exc).__name__}: {exc}") from exc
        return HttpReply(status=response.status_code, body=response.content)


def build_request_body(prompt: str, config: CompletionConfig) -> bytes:
    """Deterministic request payload: a pure function of (prompt, config)."""
    return json.dumps(
        {"model": config.model, "prompt": prompt,
         "max_tokens": config.max_tokens, "temperature": config.temperature},
        sort_keys=True, separators=(",", ":"), ensure_ascii=False,
    ).encode("utf-8")


def _scrub(text: str, secret: str) -> str:
    return text.replace(secret, "***") if secret else text


def _parse_completion(body: bytes, secret: str) -> str:
    try:
        payload = json.loads(body.decode("utf-8"))
        choices = payload["choices"]
        text = choices[0]["text"]
    except (UnicodeDecodeError, json.JSONDecodeError, LookupError,
            TypeError) as exc:
        raise ProtocolError(
            f"malformed completion payload: {_scrub(str(exc), secret)}"
        ) from None
    if not isinstance(text, str):
        raise ProtocolError("completion text is not a string")
    return text.strip()


def generate(prompt: str, config: CompletionConfig, transport: Transport,
             env: Mapping[str, str] | None = None,
             sleep: Callable[[float], None] = time.sleep) -> str:
    """Request one completion for prompt and return its trimmed text.

    Rate limits and transport failures are retried with exponential
    backoff per config.retry; credential and protocol problems are not.
    """
    if not prompt.strip():
        raise ValueError("prompt must be non-empty")
    if env is None:
        import os
        env = os.environ
    key = env.get(config.api_key_env, "")
    if not key:
        raise CredentialError(
            f"environment variable {config.api_key_env} is unset or empty")
    url = config.base_url.rstrip("/") + "/completions"
    headers = {"Authorization": f"Bearer {key}",
               "Content-Type": "application/json"}
    body = build_request_body(prompt, config)
    failure: CompletionError | None = None
    for attempt in range(config.retry.attempts):
        if attempt:
            sleep(config.retry.backoff_base * 2 ** (attempt - 1))
        try:
            reply = transport.post(url, headers, body, config.timeout)
        except TransportFailure as exc:
            failure = TransportError(_scrub(str(exc), key))
            continue
        if 200 <= reply.status < 300:
            return _parse_completion(reply.body, key)
        if reply.status in (401, 403):
            raise CredentialError(
                f"authentication rejected (HTTP {reply.status})")
        if reply.status == 429:
            failure = RateLimitError("rate limited (HTTP 429)")
            continue
        raise ApiError(f"HTTP {reply.status}: "
                       f"{_scrub(reply.body[:200].decode('utf-8', 'replace'), key)}")
    assert failure is not None
    raise failure


def generate_batch(records: Sequence[EvalRecord], config: CompletionConfig,
                   transport: Transport,
                   env: Mapping[str, str] | None = None,
                   sleep: Callable[[float], None] = time.sleep,
                   ) -> list[EvalRecord]:
    """Fill each record's response, preserving input order.

    At most config.max_concurrent requests are in flight. A record whose
    generation fails keeps its response and carries the failure message
    in .error; credential problems abort the whole batch since every
    remaining request would fail the same way.
    """
    if env is None:
        import os
        env = os.environ
    if not env.get(config.api_key_env, ""):
        raise CredentialError(
            f"environment variable {config.api_key_env} is unset or empty")
    if not records:
        return []

    def one(record: EvalRecord) -> EvalRecord:
        try:
            text = generate(record.prompt, config, transport,
                            env=env, sleep=sleep)
        except CredentialError:
            raise
        except CompletionError as exc:
            return replace(record, error=str(exc))
        return replace(record, response=text, error="")

    with ThreadPoolExecutor(max_workers=config.max_concurrent) as pool:
        return list(pool.map(one, records))
