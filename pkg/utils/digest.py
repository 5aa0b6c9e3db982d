"""Certificate digests for report records."""
from hashlib import sha256


def certificate_hash(*parts: object) -> str:
    """Stable SHA-256 over the textual parts, joined with a separator that bits never contain."""
    digest = sha256()
    for part in parts:
        digest.update(str(part).encode("utf-8"))
        digest.update(b"|")
    return digest.hexdigest()


def config_digest(text: str) -> str:
    return sha256(text.encode("utf-8")).hexdigest()[:16]
