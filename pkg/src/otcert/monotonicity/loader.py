"""Load and save monotonicity certificates and support files (JSON)."""

from pathlib import Path

from pydantic import TypeAdapter

from otcert.monotonicity.models import MonotonicityCertificate, SupportSet

_certificate_adapter: TypeAdapter[MonotonicityCertificate] = TypeAdapter(MonotonicityCertificate)


def dump_certificate(certificate: MonotonicityCertificate) -> str:
    return _certificate_adapter.dump_json(certificate, indent=2).decode()


def parse_certificate(text: str) -> MonotonicityCertificate:
    return _certificate_adapter.validate_json(text)


def load_certificate(path: Path) -> MonotonicityCertificate:
    return parse_certificate(path.read_text())


def save_certificate(certificate: MonotonicityCertificate, path: Path) -> None:
    path.write_text(dump_certificate(certificate))


def load_support(path: Path) -> SupportSet:
    """Load `{"pairs": [[i, j], ...]}`."""
    return SupportSet.model_validate_json(path.read_text())
