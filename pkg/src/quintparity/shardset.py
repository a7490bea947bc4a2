"""Shard files: split a payload across k data and 5 parity files, then scrub and repair.

Layout of one shard file, all integers little-endian::

    magic "PRD5" | version u8 | m u8 | poly u32 | k u16 | index u16
    | stripe_count u64 | payload_len u64 | crc32 of the preceding 30 bytes
    | stripe_count symbols

Symbols take one byte for m=8 and two bytes for m=16.  For m=4 two symbols
share a byte, the earlier stripe in the low nibble.  The payload is cut into
symbols the same way and dealt out row-major, so data shard i holds symbols
i, i+k, i+2k, ...  The final stripe is zero-padded.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .beyond import list_bound, recover_three_failed
from .code import NPARITY, CodeParams, build_code, canonical_error, drive_label
from .galois import FieldSpec, make_field
from .mindist import (
    MAX_ERASURES,
    Status,
    decode_combined,
    decode_stripe,
    erasure_linear_map,
)

MAGIC = b"PRD5"
VERSION = 1
_HEAD = struct.Struct("<4sBBIHHQQ")
HEADER_SIZE = _HEAD.size + 4
SHARD_WIDTHS = (4, 8, 16)
SUFFIX = ".prd5"

EXIT_CLEAN = 0
EXIT_CORRECTED = 1
EXIT_UNCORRECTABLE = 2
EXIT_USAGE = 64


class ShardError(Exception):
    """A failure that maps to a CLI exit code."""

    def __init__(self, message: str, code: int = EXIT_UNCORRECTABLE):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class ShardHeader:
    m: int
    poly: int
    k: int
    index: int
    stripe_count: int
    payload_len: int

    def pack(self) -> bytes:
        head = _HEAD.pack(
            MAGIC, VERSION, self.m, self.poly, self.k, self.index, self.stripe_count, self.payload_len
        )
        return head + struct.pack("<I", zlib.crc32(head))

    @classmethod
    def unpack(cls, buf: bytes) -> "ShardHeader":
        if len(buf) < HEADER_SIZE:
            raise ShardError("truncated header")
        head = buf[: _HEAD.size]
        (crc,) = struct.unpack_from("<I", buf, _HEAD.size)
        if zlib.crc32(head) != crc:
            raise ShardError("header checksum mismatch")
        magic, version, m, poly, k, index, count, plen = _HEAD.unpack(head)
        if magic != MAGIC or version != VERSION:
            raise ShardError(f"not a version {VERSION} shard file")
        if m not in SHARD_WIDTHS:
            raise ShardError(f"unsupported symbol width m={m}")
        if index >= k + NPARITY:
            raise ShardError(f"shard index {index} out of range for k={k}")
        if plen > count * k * m // 8:
            raise ShardError("payload length exceeds shard capacity")
        return cls(m, poly, k, index, count, plen)

    @property
    def layout(self) -> tuple[int, int, int, int, int]:
        """Everything except the index; must agree across a shard set."""
        return (self.m, self.poly, self.k, self.stripe_count, self.payload_len)

    def code(self) -> CodeParams:
        return build_code(make_field(FieldSpec(self.m, self.poly)), self.k)


# -- symbol packing ------------------------------------------------------------


def body_size(m: int, count: int) -> int:
    return (count + 1) // 2 if m == 4 else count * (m // 8)


def pack_symbols(m: int, sym: np.ndarray) -> bytes:
    sym = np.asarray(sym, dtype=np.uint16)
    if m == 8:
        return sym.astype(np.uint8).tobytes()
    if m == 16:
        return sym.astype("<u2").tobytes()
    if len(sym) % 2:
        sym = np.append(sym, np.uint16(0))
    return (sym[0::2] | (sym[1::2] << 4)).astype(np.uint8).tobytes()


def unpack_symbols(m: int, buf: bytes, count: int) -> np.ndarray:
    if len(buf) != body_size(m, count):
        raise ShardError(f"shard body holds {len(buf)} bytes, expected {body_size(m, count)}")
    if m == 8:
        return np.frombuffer(buf, dtype=np.uint8).astype(np.uint16)
    if m == 16:
        return np.frombuffer(buf, dtype="<u2").astype(np.uint16)
    b = np.frombuffer(buf, dtype=np.uint8).astype(np.uint16)
    out = np.empty(2 * len(b), dtype=np.uint16)
    out[0::2] = b & 0xF
    out[1::2] = b >> 4
    return out[:count]


def payload_to_stripes(m: int, k: int, payload: bytes) -> np.ndarray:
    """Cut the payload into symbols and deal them row-major into stripes x k."""
    if m == 16 and len(payload) % 2:
        payload += b"\0"
    sym = unpack_symbols(m, payload, len(payload) * 8 // m) if payload else np.zeros(0, np.uint16)
    count = -(-len(sym) // k)
    out = np.zeros(count * k, dtype=np.uint16)
    out[: len(sym)] = sym
    return out.reshape(count, k)


def stripes_to_payload(m: int, data: np.ndarray, payload_len: int) -> bytes:
    return pack_symbols(m, np.asarray(data).reshape(-1))[:payload_len]


# -- reading and writing ---------------------------------------------------------


def shard_name(index: int, n: int) -> str:
    return f"shard_{index:0{max(2, len(str(n - 1)))}d}{SUFFIX}"


def write_shard(path: Path, header: ShardHeader, sym: np.ndarray) -> None:
    path.write_bytes(header.pack() + pack_symbols(header.m, sym))


def read_shard(path: Path) -> tuple[ShardHeader, np.ndarray]:
    buf = Path(path).read_bytes()
    h = ShardHeader.unpack(buf)
    return h, unpack_symbols(h.m, buf[HEADER_SIZE:], h.stripe_count)


def encode_payload(payload: bytes, out_dir, k: int, spec: FieldSpec) -> list[Path]:
    if spec.m not in SHARD_WIDTHS:
        raise ShardError(f"shard files support m in {SHARD_WIDTHS}, got {spec.m}", EXIT_USAGE)
    try:
        params = build_code(make_field(spec), k)
    except ValueError as exc:
        raise ShardError(str(exc), EXIT_USAGE) from exc
    data = payload_to_stripes(spec.m, k, payload)
    parity = kernels.encode_many(params, data) if len(data) else np.zeros((0, NPARITY), np.uint16)
    cols = np.concatenate([data, parity], axis=1)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    n = params.n
    paths = []
    for i in range(n):
        h = ShardHeader(spec.m, spec.poly, k, i, len(data), len(payload))
        p = out_dir / shard_name(i, n)
        write_shard(p, h, cols[:, i])
        paths.append(p)
    return paths


@dataclass
class ShardSet:
    """The shards found in one directory, as a stripes x n symbol matrix."""

    header: ShardHeader
    params: CodeParams
    symbols: np.ndarray
    paths: dict = field(default_factory=dict)
    missing: list = field(default_factory=list)
    rejected: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.params.n


def load_shards(directory, ignore: Iterable[int] = ()) -> ShardSet:
    """Read every shard file in ``directory``; unreadable headers count as missing.

    Indices in ``ignore`` are treated as missing even when their file is present.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise ShardError(f"{directory} is not a directory", EXIT_USAGE)
    ignore = set(ignore)
    found: dict[int, tuple[Path, ShardHeader, np.ndarray]] = {}
    rejected = []
    for p in sorted(directory.glob("*" + SUFFIX)):
        try:
            h, sym = read_shard(p)
        except ShardError as exc:
            rejected.append((p, str(exc)))
            continue
        if h.index in found:
            raise ShardError(f"two shards claim index {h.index}: {found[h.index][0]} and {p}")
        found[h.index] = (p, h, sym)
    if not found:
        raise ShardError(f"no readable shard files in {directory}")
    layouts = {h.layout for _, h, _ in found.values()}
    if len(layouts) > 1:
        raise ShardError(f"shard headers disagree: {sorted(layouts)}")
    first = next(iter(found.values()))[1]
    params = first.code()
    mat = np.zeros((first.stripe_count, params.n), dtype=np.uint16)
    paths = {}
    for i, (p, _, sym) in found.items():
        paths[i] = p
        if i not in ignore:
            mat[:, i] = sym
    missing = sorted(set(range(params.n)) - (set(found) - ignore))
    return ShardSet(first, params, mat, paths, missing, rejected)


def _write_back(sset: ShardSet, directory: Path, indices: Iterable[int]) -> None:
    h = sset.header
    for i in indices:
        path = sset.paths.get(i) or directory / shard_name(i, sset.n)
        hi = ShardHeader(h.m, h.poly, h.k, i, h.stripe_count, h.payload_len)
        write_shard(path, hi, sset.symbols[:, i])


# -- operations ------------------------------------------------------------------


@dataclass
class RepairReport:
    stripes: int = 0
    corrected: list = field(default_factory=list)
    uncorrectable: list = field(default_factory=list)
    lines: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.uncorrectable:
            return EXIT_UNCORRECTABLE
        if self.corrected:
            return EXIT_CORRECTED
        return EXIT_CLEAN


def _repair_erasures(sset: ShardSet, report: RepairReport) -> None:
    """Fill the missing columns in bulk, then fall back to per-stripe decoding where needed."""
    params = sset.params
    f = params.field
    mat = sset.symbols
    erased = sset.missing
    s = kernels.syndrome_many(params, mat)
    if erased:
        pos, r, c = erasure_linear_map(params, erased)
        mat[:, pos] ^= kernels.matmul_rows(f, r, s)
        bad = kernels.matmul_rows(f, c, s).any(axis=1) if c else np.zeros(len(mat), bool)
        report.corrected.extend(np.flatnonzero(~bad).tolist())
    else:
        bad = s.any(axis=1)
    for n in np.flatnonzero(bad).tolist():
        if erased:
            # undo the bulk fill; the stripe also carries an error off the erasures
            mat[n, pos] = 0
        out = decode_combined(params, mat[n].tolist(), erased)
        if out.status is Status.UNCORRECTABLE:
            report.uncorrectable.append(n)
            report.lines.append(f"{n}\tuncorrectable\t-")
            continue
        mat[n] = out.codeword
        report.corrected.append(n)
        cls = out.classification.value if out.classification else "-"
        report.lines.append(f"{n}\t{out.status.value}\t{cls}")
    report.corrected.sort()


def reassemble(directory, out_path, missing: Iterable[int] = ()) -> RepairReport:
    sset = load_shards(directory, missing)
    for i in missing:
        if not 0 <= i < sset.n:
            raise ShardError(f"shard index {i} out of range 0..{sset.n - 1}", EXIT_USAGE)
    if len(sset.missing) > MAX_ERASURES:
        raise ShardError(
            f"{len(sset.missing)} shards missing ({sset.missing}); at most {MAX_ERASURES} can be rebuilt"
        )
    report = RepairReport(stripes=len(sset.symbols))
    _repair_erasures(sset, report)
    data = sset.symbols[:, : sset.params.k]
    Path(out_path).write_bytes(stripes_to_payload(sset.header.m, data, sset.header.payload_len))
    return report


def _candidate_text(k: int, e: dict) -> str:
    return " ".join(f"{drive_label(k, p)}^{v:#x}" for p, v in canonical_error(e))


def scrub(directory, repair: bool = False, list_candidates: bool = False) -> RepairReport:
    """Check every stripe; optionally correct in place and list candidates for the rest.

    Report lines are tab-separated: stripe index, status, classification.
    Candidate lines follow their stripe as: stripe index, "candidate", rank, error.
    """
    directory = Path(directory)
    sset = load_shards(directory)
    if sset.missing:
        names = ", ".join(str(p) for p, _ in sset.rejected)
        extra = f" (unreadable: {names})" if names else ""
        raise ShardError(f"shards {sset.missing} missing{extra}; use reassemble to rebuild them")
    params = sset.params
    k = params.k
    mat = sset.symbols
    report = RepairReport(stripes=len(mat))
    s = kernels.syndrome_many(params, mat)
    touched = set()
    counts: dict[str, int] = {}
    for n in np.flatnonzero(s.any(axis=1)).tolist():
        out = decode_stripe(params, mat[n].tolist())
        if out.status is Status.UNCORRECTABLE:
            report.uncorrectable.append(n)
            report.lines.append(f"{n}\tuncorrectable\t-")
            if list_candidates:
                cands = recover_three_failed(params, s[n].tolist())
                assert len(cands) <= list_bound(k)
                for r, e in enumerate(cands):
                    report.lines.append(f"{n}\tcandidate\t{r}\t{_candidate_text(k, e)}")
            continue
        cls = out.classification.value
        counts[cls] = counts.get(cls, 0) + 1
        report.corrected.append(n)
        report.lines.append(f"{n}\t{out.status.value}\t{cls}")
        if repair:
            mat[n] = out.codeword
            touched.update(out.error)
    if repair and touched:
        _write_back(sset, directory, sorted(touched))
    clean = report.stripes - len(report.corrected) - len(report.uncorrectable)
    summary = f"summary\tclean={clean}\tcorrected={len(report.corrected)}\tuncorrectable={len(report.uncorrectable)}"
    for cls in sorted(counts):
        summary += f"\t{cls}={counts[cls]}"
    if repair:
        summary += f"\trepaired_shards={len(touched)}"
    report.lines.append(summary)
    return report


def inject(path, stripe: int, value: int) -> None:
    """XOR ``value`` into one symbol of a shard file, leaving the header alone."""
    path = Path(path)
    buf = bytearray(path.read_bytes())
    h = ShardHeader.unpack(bytes(buf))
    if not 0 <= stripe < h.stripe_count:
        raise ShardError(f"stripe {stripe} out of range 0..{h.stripe_count - 1}", EXIT_USAGE)
    if not 0 < value < (1 << h.m):
        raise ShardError(f"value must be a nonzero {h.m}-bit symbol", EXIT_USAGE)
    if h.m == 4:
        buf[HEADER_SIZE + stripe // 2] ^= value << (4 * (stripe % 2))
    else:
        w = h.m // 8
        off = HEADER_SIZE + stripe * w
        old = int.from_bytes(buf[off : off + w], "little")
        buf[off : off + w] = (old ^ value).to_bytes(w, "little")
    path.write_bytes(bytes(buf))


__all__ = [
    "EXIT_CLEAN",
    "EXIT_CORRECTED",
    "EXIT_UNCORRECTABLE",
    "EXIT_USAGE",
    "HEADER_SIZE",
    "RepairReport",
    "ShardError",
    "ShardHeader",
    "ShardSet",
    "encode_payload",
    "inject",
    "load_shards",
    "pack_symbols",
    "payload_to_stripes",
    "read_shard",
    "reassemble",
    "scrub",
    "stripes_to_payload",
    "unpack_symbols",
]
