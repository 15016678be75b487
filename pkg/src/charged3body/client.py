"""Thin HTTP client for the service; the CLI's only path to the library.

Without a server URL the client mounts the FastAPI app over an in-process
ASGI transport, so the command line works stand-alone while still exercising
the exact request/response surface a remote deployment serves.
"""

from __future__ import annotations

import asyncio

import httpx

from .errors import Charged3BodyError, DegeneracyError, InputError


class ServiceError(Charged3BodyError):
    """Error reported by the service; carries the machine-readable kind."""

    def __init__(self, kind: str, message: str, exit_code: int):
        super().__init__(message)
        self.kind = kind
        self.exit_code = exit_code


class ServiceClient:
    def __init__(self, base_url: str | None = None, timeout: float | None = 600.0):
        self._timeout = timeout
        self._sync: httpx.Client | None = None
        self._transport: httpx.ASGITransport | None = None
        if base_url:
            self._sync = httpx.Client(base_url=base_url, timeout=timeout)
        else:
            from .service import app

            self._transport = httpx.ASGITransport(app=app)

    def close(self):
        if self._sync is not None:
            self._sync.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _request(self, path: str, payload: dict) -> httpx.Response:
        if self._sync is not None:
            return self._sync.post(path, json=payload)

        async def go() -> httpx.Response:
            async with httpx.AsyncClient(
                transport=self._transport,
                base_url="http://charged3body.local",
                timeout=self._timeout,
            ) as ac:
                return await ac.post(path, json=payload)

        return asyncio.run(go())

    def post(self, path: str, payload: dict) -> dict:
        resp = self._request(path, payload)
        if resp.status_code >= 400:
            kind, message = "error", resp.text
            try:
                err = resp.json().get("error", {})
                kind = err.get("kind", kind)
                message = err.get("message", message)
            except Exception:
                pass
            if resp.status_code == 422:
                raise ServiceError("input-error", message, InputError.exit_code)
            exit_code = (
                DegeneracyError.exit_code if resp.status_code == 409 else InputError.exit_code
            )
            raise ServiceError(kind, message, exit_code)
        return resp.json()
