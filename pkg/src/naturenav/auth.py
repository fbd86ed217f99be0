"""Admin credentials and bearer sessions.

Passwords are hashed with scrypt (memory-hard) under a per-user random
salt; the encoded string carries the parameters so they can be raised
later without invalidating existing users. Session tokens are 256-bit
random values held in memory only.
"""

from __future__ import annotations

import base64
import hashlib
import hmac
import json
import os
import secrets
import threading
import time
from dataclasses import dataclass
from pathlib import Path

SCRYPT_N = 2**14
SCRYPT_R = 8
SCRYPT_P = 1

MIN_PASSWORD_LEN = 8

DEFAULT_TTL_S = 24 * 3600


class AuthError(Exception):
    pass


class DuplicateUser(AuthError):
    pass


class WeakPassword(AuthError):
    pass


def hash_password(password: str) -> str:
    salt = os.urandom(16)
    digest = hashlib.scrypt(
        password.encode("utf-8"), salt=salt, n=SCRYPT_N, r=SCRYPT_R, p=SCRYPT_P
    )
    return "scrypt${}${}${}${}${}${}".format(
        SCRYPT_N,
        SCRYPT_R,
        SCRYPT_P,
        base64.b64encode(salt).decode(),
        base64.b64encode(digest).decode(),
        "",
    ).rstrip("$")


def verify_password(password: str, encoded: str) -> bool:
    try:
        scheme, n, r, p, salt_b64, digest_b64 = encoded.split("$")
        if scheme != "scrypt":
            return False
        expected = base64.b64decode(digest_b64)
        digest = hashlib.scrypt(
            password.encode("utf-8"),
            salt=base64.b64decode(salt_b64),
            n=int(n),
            r=int(r),
            p=int(p),
            dklen=len(expected),
        )
    except (ValueError, TypeError):
        return False
    return hmac.compare_digest(digest, expected)


class UserStore:
    """Flat JSON file of username -> encoded password hash."""

    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._users: dict[str, str] = {}
        if self._path.exists():
            self._users = json.loads(self._path.read_text(encoding="utf-8"))

    def __len__(self):
        return len(self._users)

    def add_user(self, username: str, password: str) -> None:
        if not username.strip():
            raise AuthError("username must be non-empty")
        if username in self._users:
            raise DuplicateUser(f"user {username!r} already exists")
        if len(password) < MIN_PASSWORD_LEN:
            raise WeakPassword(f"password must be at least {MIN_PASSWORD_LEN} characters")
        self._users[username] = hash_password(password)
        tmp = self._path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self._users, indent=2), encoding="utf-8")
        os.replace(tmp, self._path)

    def check(self, username: str, password: str) -> bool:
        # Hash even for unknown users so the timing of a rejection does not
        # reveal whether the username exists.
        encoded = self._users.get(username)
        if encoded is None:
            verify_password(password, hash_password("decoy-password"))
            return False
        return verify_password(password, encoded)


@dataclass(frozen=True)
class Session:
    token: str
    username: str
    expires_at: float  # unix seconds


class SessionManager:
    """In-memory bearer sessions with TTL expiry; clock is injectable."""

    def __init__(self, ttl_s: float = DEFAULT_TTL_S, clock=time.time):
        self._ttl_s = ttl_s
        self._clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def open(self, username: str) -> Session:
        session = Session(
            token=secrets.token_urlsafe(32),
            username=username,
            expires_at=self._clock() + self._ttl_s,
        )
        with self._lock:
            self._sessions[session.token] = session
        return session

    def resolve(self, token: str) -> Session | None:
        """The live session for a token, or None if unknown or expired."""
        with self._lock:
            session = self._sessions.get(token)
            if session is None:
                return None
            if self._clock() >= session.expires_at:
                del self._sessions[token]
                return None
            return session
