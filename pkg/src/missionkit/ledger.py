"""Tamper-evident on-board flight ledger.

An append-only SHA-256 hash chain.  Every entry binds its sequence number,
timestamp, provenance token, and payload to the previous entry's digest, so
any edit, reorder, or splice of stored entries breaks verification at the
first affected index.  The chain does not defend against whole-file
replacement by an adversary who can recompute hashes; it defends the record
against silent in-place tampering and supports two capture responses:

* ``zeroize``      overwrite every stored field with zeros.  Nothing is
                   recoverable and the file visibly fails verification.
* ``decoy_fill``   replace the contents with a freshly generated, internally
                   consistent fake mission.  The file verifies Valid, replays
                   to a well-formed report, and carries no stored marker of
                   being a decoy: the mode flag lives in memory only and is
                   never serialized.

File format (line-oriented, UTF-8):

    bbx-ledger/1 epoch_ms=<int> entries=<int>
    {"seq": 0, "timestamp_ms": ..., "provenance": ..., "payload_base64": ...,
     "prev_hash_hex": ..., "entry_hash_hex": ...}
    ...

The genesis entry's prev_hash is 32 zero bytes.  The hash input is a
canonical binary encoding: each field (seq and timestamp as 8-byte big-endian
integers, provenance as UTF-8, payload and prev_hash as raw bytes) prefixed
with its 4-byte big-endian length, concatenated in that order.
"""

from __future__ import annotations

import base64
import binascii
import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import MalformedFile, SealedLedger, TimestampRegression

FORMAT_VERSION = "bbx-ledger/1"
GENESIS_HASH = bytes(32)
SEAL_PAYLOAD = b"SEAL"

PROVENANCE_CONTRACT_ENGINE = "contract_engine"
PROVENANCE_MC2_COMMAND = "mc2_command"
PROVENANCE_UAV_ACTION = "uav_action"

_FIXED_PROVENANCE = {
    PROVENANCE_CONTRACT_ENGINE,
    PROVENANCE_MC2_COMMAND,
    PROVENANCE_UAV_ACTION,
}


def sensor_provenance(name: str) -> str:
    """Provenance token for a named on-board sensor."""
    if not name:
        raise ValueError("sensor name must be non-empty")
    return f"sensor:{name}"


def _is_valid_provenance(token: str) -> bool:
    if token in _FIXED_PROVENANCE:
        return True
    return token.startswith("sensor:") and len(token) > len("sensor:")


class LedgerMode(Enum):
    """In-memory lifecycle state; deliberately never serialized."""

    LIVE = "live"
    ZEROIZED = "zeroized"
    DECOY = "decoy"


@dataclass(frozen=True)
class LedgerEntry:
    seq: int
    timestamp_ms: int
    provenance: str
    payload: bytes
    prev_hash: bytes
    entry_hash: bytes


@dataclass(frozen=True)
class ChainStatus:
    """Result of verifying the hash chain."""

    valid: bool
    broken_at: int | None = None

    def __str__(self) -> str:
        return "Valid" if self.valid else f"BrokenAt({self.broken_at})"


def canonical_encoding(
    seq: int, timestamp_ms: int, provenance: str, payload: bytes, prev_hash: bytes
) -> bytes:
    """Unambiguous byte encoding of an entry's hashed fields.

    Length prefixes make the encoding injective: no concatenation of field
    values can collide with a different field split.
    """
    parts = (
        seq.to_bytes(8, "big"),
        timestamp_ms.to_bytes(8, "big"),
        provenance.encode("utf-8"),
        payload,
        prev_hash,
    )
    blob = bytearray()
    for part in parts:
        blob += len(part).to_bytes(4, "big")
        blob += part
    return bytes(blob)


def compute_entry_hash(
    seq: int, timestamp_ms: int, provenance: str, payload: bytes, prev_hash: bytes
) -> bytes:
    return hashlib.sha256(
        canonical_encoding(seq, timestamp_ms, provenance, payload, prev_hash)
    ).digest()


class Ledger:
    """Single-writer append-only ledger for one mission.

    Append is the only mutation in live mode; zeroize and decoy_fill are the
    two capture responses and leave the ledger non-live.  The sealed flag is
    derived state: a ledger is sealed exactly when its last entry is the
    seal entry, and the flag is reconstructed from the entries on load
    rather than stored.
    """

    def __init__(self, mission_epoch_ms: int = 0):
        if mission_epoch_ms < 0:
            raise ValueError("mission_epoch_ms must be >= 0")
        self.mission_epoch_ms = mission_epoch_ms
        self.entries: list[LedgerEntry] = []
        self.sealed = False
        self.mode = LedgerMode.LIVE

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ledger):
            return NotImplemented
        return (
            self.mission_epoch_ms == other.mission_epoch_ms
            and self.entries == other.entries
            and self.sealed == other.sealed
        )

    def __repr__(self) -> str:
        return (
            f"Ledger(entries={len(self.entries)}, sealed={self.sealed},"
            f" mode={self.mode.value})"
        )

    def append(self, provenance: str, timestamp_ms: int, payload: bytes) -> LedgerEntry:
        if self.mode is not LedgerMode.LIVE:
            raise SealedLedger(f"ledger is {self.mode.value}, not live")
        if self.sealed:
            raise SealedLedger("ledger is sealed")
        if not _is_valid_provenance(provenance):
            raise ValueError(f"unknown provenance token {provenance!r}")
        if not isinstance(payload, (bytes, bytearray)):
            raise ValueError("payload must be bytes")
        if timestamp_ms < 0:
            raise ValueError("timestamp_ms must be >= 0")
        if self.entries and timestamp_ms < self.entries[-1].timestamp_ms:
            raise TimestampRegression(
                f"timestamp {timestamp_ms} precedes previous"
                f" {self.entries[-1].timestamp_ms}"
            )
        seq = len(self.entries)
        prev_hash = self.entries[-1].entry_hash if self.entries else GENESIS_HASH
        payload = bytes(payload)
        entry = LedgerEntry(
            seq=seq,
            timestamp_ms=timestamp_ms,
            provenance=provenance,
            payload=payload,
            prev_hash=prev_hash,
            entry_hash=compute_entry_hash(seq, timestamp_ms, provenance, payload, prev_hash),
        )
        self.entries.append(entry)
        return entry

    def seal(self) -> LedgerEntry:
        """Append the final seal entry; afterwards the ledger rejects appends."""
        last_ts = self.entries[-1].timestamp_ms if self.entries else 0
        entry = self.append(PROVENANCE_CONTRACT_ENGINE, last_ts, SEAL_PAYLOAD)
        self.sealed = True
        return entry

    def verify_chain(self) -> ChainStatus:
        """Check sequence numbers, linkage, and every digest; first failure wins."""
        expected_prev = GENESIS_HASH
        for index, entry in enumerate(self.entries):
            try:
                recomputed = compute_entry_hash(
                    entry.seq,
                    entry.timestamp_ms,
                    entry.provenance,
                    entry.payload,
                    entry.prev_hash,
                )
            except (OverflowError, ValueError):
                return ChainStatus(False, index)
            if (
                entry.seq != index
                or entry.prev_hash != expected_prev
                or entry.entry_hash != recomputed
            ):
                return ChainStatus(False, index)
            expected_prev = entry.entry_hash
        return ChainStatus(True)

    def zeroize(self) -> None:
        """Overwrite every entry field (and the epoch) with zeros.

        Entry count is preserved, everything else is destroyed: sequence
        numbers, timestamps, provenance, payloads, and both hashes become
        zero.  Idempotent.  A non-empty zeroized ledger fails verification
        at entry 0 by construction.
        """
        self.entries = [
            LedgerEntry(0, 0, "", b"", GENESIS_HASH, GENESIS_HASH)
            for _ in self.entries
        ]
        self.mission_epoch_ms = 0
        self.mode = LedgerMode.ZEROIZED

    def decoy_fill(self, decoy_seed: int, template=None) -> None:
        """Replace contents with a plausible fake mission recording.

        The fake mission is generated deterministically from decoy_seed (and
        an optional telemetry DatasetSpec template supplying the kernel and
        noise profile), hashed like any live mission, and sealed.  The same
        seed and template always produce byte-identical contents.
        """
        from .sim import build_decoy_ledger  # deferred: sim imports this module

        fake = build_decoy_ledger(decoy_seed, template, self.mission_epoch_ms)
        self.entries = fake.entries
        self.sealed = True
        self.mode = LedgerMode.DECOY

    def export(self, path) -> None:
        """Write the header line plus one JSON record per entry."""
        lines = [
            f"{FORMAT_VERSION} epoch_ms={self.mission_epoch_ms}"
            f" entries={len(self.entries)}"
        ]
        for entry in self.entries:
            lines.append(
                json.dumps(
                    {
                        "seq": entry.seq,
                        "timestamp_ms": entry.timestamp_ms,
                        "provenance": entry.provenance,
                        "payload_base64": base64.b64encode(entry.payload).decode("ascii"),
                        "prev_hash_hex": entry.prev_hash.hex(),
                        "entry_hash_hex": entry.entry_hash.hex(),
                    },
                    separators=(",", ":"),
                )
            )
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> tuple["Ledger", ChainStatus]:
        """Parse a ledger file and verify it.

        Structural problems (bad header, bad JSON, missing keys, undecodable
        fields, entry count mismatch) raise MalformedFile with the offending
        line number.  Tampering with well-formed contents does not raise: it
        is reported through the returned ChainStatus.
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedFile(f"not a UTF-8 ledger file: {exc}") from None
        lines = text.splitlines()
        if not lines:
            raise MalformedFile("empty file")
        header = lines[0].split()
        if (
            len(header) != 3
            or header[0] != FORMAT_VERSION
            or not header[1].startswith("epoch_ms=")
            or not header[2].startswith("entries=")
        ):
            raise MalformedFile(f"line 1: bad header {lines[0]!r}")
        try:
            epoch_ms = int(header[1].removeprefix("epoch_ms="))
            declared = int(header[2].removeprefix("entries="))
        except ValueError:
            raise MalformedFile(f"line 1: bad header numbers {lines[0]!r}") from None
        if epoch_ms < 0 or declared < 0:
            raise MalformedFile("line 1: negative header numbers")

        ledger = cls(mission_epoch_ms=epoch_ms)
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                raise MalformedFile(f"line {lineno}: blank line inside ledger")
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedFile(f"line {lineno}: {exc.msg} (truncated file?)") from None
            if not isinstance(record, dict):
                raise MalformedFile(f"line {lineno}: entry is not an object")
            try:
                seq = record["seq"]
                timestamp_ms = record["timestamp_ms"]
                provenance = record["provenance"]
                payload = base64.b64decode(record["payload_base64"], validate=True)
                prev_hash = bytes.fromhex(record["prev_hash_hex"])
                entry_hash = bytes.fromhex(record["entry_hash_hex"])
            except KeyError as exc:
                raise MalformedFile(f"line {lineno}: missing key {exc}") from None
            except (binascii.Error, ValueError, TypeError) as exc:
                raise MalformedFile(f"line {lineno}: undecodable field ({exc})") from None
            if not isinstance(seq, int) or not isinstance(timestamp_ms, int):
                raise MalformedFile(f"line {lineno}: seq/timestamp must be integers")
            if seq < 0 or timestamp_ms < 0:
                raise MalformedFile(f"line {lineno}: negative seq/timestamp")
            if not isinstance(provenance, str):
                raise MalformedFile(f"line {lineno}: provenance must be a string")
            if len(prev_hash) != 32 or len(entry_hash) != 32:
                raise MalformedFile(f"line {lineno}: hashes must be 32 bytes")
            ledger.entries.append(
                LedgerEntry(seq, timestamp_ms, provenance, payload, prev_hash, entry_hash)
            )
        if len(ledger.entries) != declared:
            raise MalformedFile(
                f"header declares {declared} entries but file holds"
                f" {len(ledger.entries)} (truncated file?)"
            )
        last = ledger.entries[-1] if ledger.entries else None
        ledger.sealed = (
            last is not None
            and last.provenance == PROVENANCE_CONTRACT_ENGINE
            and last.payload == SEAL_PAYLOAD
        )
        return ledger, ledger.verify_chain()
