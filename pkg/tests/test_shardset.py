import random
import zlib
from pathlib import Path

import numpy as np
import pytest

from quintparity.cli import main
from quintparity.galois import FieldSpec
from quintparity.shardset import (
    HEADER_SIZE,
    ShardError,
    ShardHeader,
    encode_payload,
    inject,
    load_shards,
    pack_symbols,
    read_shard,
    reassemble,
    scrub,
    unpack_symbols,
)


def shards(d):
    return sorted(Path(d).glob("*.prd5"))


def test_header_layout_golden():
    h = ShardHeader(m=4, poly=0x13, k=2, index=0, stripe_count=3, payload_len=3)
    head = bytes.fromhex("50524435" "01" "04" "13000000" "0200" "0000" "0300000000000000" "0300000000000000")
    assert HEADER_SIZE == 34
    assert h.pack() == head + zlib.crc32(head).to_bytes(4, "little")
    assert ShardHeader.unpack(h.pack()) == h


def test_nibble_shards_golden(tmp_path):
    encode_payload(b"\x12\x34\x56", tmp_path, 2, FieldSpec(4, 0x13))
    files = shards(tmp_path)
    assert len(files) == 7
    # payload nibbles 2 1 4 3 6 5 dealt to two data shards, low nibble first
    assert files[0].read_bytes()[HEADER_SIZE:] == bytes([0x42, 0x06])
    assert files[1].read_bytes()[HEADER_SIZE:] == bytes([0x31, 0x05])


def test_symbol_packing_round_trip():
    rng = np.random.default_rng(0)
    for m in (4, 8, 16):
        for count in (0, 1, 7, 8):
            sym = rng.integers(0, 1 << m, count, dtype=np.uint16)
            assert np.array_equal(unpack_symbols(m, pack_symbols(m, sym), count), sym)
    assert pack_symbols(16, np.array([0x1234], np.uint16)) == b"\x34\x12"


def test_header_rejections():
    good = ShardHeader(8, 0x11D, 4, 0, 1, 3).pack()
    bad_crc = bytearray(good)
    bad_crc[10] ^= 1
    with pytest.raises(ShardError):
        ShardHeader.unpack(bytes(bad_crc))
    with pytest.raises(ShardError):
        ShardHeader.unpack(good[:20])
    with pytest.raises(ShardError):
        ShardHeader.unpack(ShardHeader(8, 0x11D, 4, 9, 1, 3).pack())
    with pytest.raises(ShardError):
        ShardHeader.unpack(ShardHeader(8, 0x11D, 4, 0, 1, 5).pack())


def test_empty_and_one_byte_payloads(tmp_path):
    encode_payload(b"", tmp_path / "e", 4, FieldSpec.default(8))
    h, sym = read_shard(shards(tmp_path / "e")[0])
    assert h.stripe_count == 0 and len(sym) == 0
    encode_payload(b"\x7f", tmp_path / "o", 4, FieldSpec.default(8))
    files = shards(tmp_path / "o")
    assert len(files) == 9
    h, sym = read_shard(files[0])
    assert h.stripe_count == 1 and h.payload_len == 1 and sym.tolist() == [0x7F]
    assert [read_shard(f)[1].tolist() for f in files[1:4]] == [[0], [0], [0]]


@pytest.mark.parametrize("m, k", [(4, 6), (8, 10), (16, 5)])
@pytest.mark.parametrize("size", [0, 1, 29, 1000])
def test_round_trip_any_four_deleted(tmp_path, m, k, size):
    rng = random.Random(size * 31 + m)
    payload = bytes(rng.randrange(256) for _ in range(size))
    encode_payload(payload, tmp_path, k, FieldSpec.default(m))
    files = shards(tmp_path)
    for f in rng.sample(files, 4):
        f.unlink()
    out = tmp_path / "out.bin"
    rep = reassemble(tmp_path, out)
    assert out.read_bytes() == payload
    assert rep.exit_code in (0, 1) and not rep.uncorrectable


def test_missing_flag_and_five_missing(tmp_path):
    payload = bytes(range(200))
    encode_payload(payload, tmp_path, 8, FieldSpec.default(8))
    out = tmp_path / "o"
    reassemble(tmp_path, out, missing=[0, 3, 9, 12])
    assert out.read_bytes() == payload
    with pytest.raises(ShardError):
        reassemble(tmp_path, out, missing=[0, 1, 2, 3, 4])


def test_reassemble_corrects_error_next_to_erasures(tmp_path):
    payload = bytes(range(256)) * 4
    encode_payload(payload, tmp_path, 8, FieldSpec.default(8))
    files = shards(tmp_path)
    files[2].unlink()
    files[5].unlink()
    inject(files[7], 10, 0x55)
    out = tmp_path / "o"
    rep = reassemble(tmp_path, out)
    assert out.read_bytes() == payload and rep.exit_code == 1


def test_header_disagreement_is_fatal(tmp_path):
    encode_payload(b"abc" * 10, tmp_path / "a", 4, FieldSpec.default(8))
    encode_payload(b"xyz" * 11, tmp_path / "b", 4, FieldSpec.default(8))
    mixed = tmp_path / "m"
    mixed.mkdir()
    for i, f in enumerate(shards(tmp_path / "a")):
        src = f if i < 5 else shards(tmp_path / "b")[i]
        (mixed / f.name).write_bytes(src.read_bytes())
    with pytest.raises(ShardError):
        load_shards(mixed)


def test_corrupt_header_counts_as_missing(tmp_path):
    payload = b"hello world" * 50
    encode_payload(payload, tmp_path, 5, FieldSpec.default(8))
    f = shards(tmp_path)[1]
    b = bytearray(f.read_bytes())
    b[12] ^= 0xFF
    f.write_bytes(bytes(b))
    sset = load_shards(tmp_path)
    assert sset.missing == [1] and len(sset.rejected) == 1
    reassemble(tmp_path, tmp_path / "o")
    assert (tmp_path / "o").read_bytes() == payload


def test_scrub_repairs_two_corrupted_shards(tmp_path):
    rng = random.Random(5)
    payload = bytes(rng.randrange(256) for _ in range(5000))
    encode_payload(payload, tmp_path, 12, FieldSpec.default(8))
    files = shards(tmp_path)
    pristine = [f.read_bytes() for f in files]
    assert scrub(tmp_path).exit_code == 0
    for f in (files[3], files[14]):
        for stripe in rng.sample(range(417), 100):
            inject(f, stripe, rng.randrange(1, 256))
    rep = scrub(tmp_path, repair=True)
    assert rep.exit_code == 1 and not rep.uncorrectable
    assert [f.read_bytes() for f in files] == pristine
    assert scrub(tmp_path).exit_code == 0


def test_scrub_lists_candidates_for_three_failures(tmp_path):
    encode_payload(bytes(range(100)), tmp_path, 7, FieldSpec.default(4))
    files = shards(tmp_path)
    for f, v in zip((files[1], files[8], files[11]), (3, 5, 9)):
        inject(f, 4, v)
    rep = scrub(tmp_path, list_candidates=True)
    assert rep.exit_code == 2 and rep.uncorrectable == [4]
    cands = [line for line in rep.lines if "\tcandidate\t" in line]
    assert 1 <= len(cands) <= 2 * 7 + 4
    assert any(line.endswith("D2^0x3 P2^0x5 P5^0x9") for line in cands)


def test_scrub_requires_all_shards(tmp_path):
    encode_payload(b"x" * 40, tmp_path, 4, FieldSpec.default(8))
    shards(tmp_path)[0].unlink()
    with pytest.raises(ShardError):
        scrub(tmp_path)


def test_inject_is_an_involution(tmp_path):
    encode_payload(b"data" * 30, tmp_path, 4, FieldSpec.default(16))
    f = shards(tmp_path)[2]
    before = f.read_bytes()
    inject(f, 3, 0xBEEF)
    assert f.read_bytes() != before and f.read_bytes()[:HEADER_SIZE] == before[:HEADER_SIZE]
    inject(f, 3, 0xBEEF)
    assert f.read_bytes() == before
    with pytest.raises(ShardError):
        inject(f, 3, 0)
    with pytest.raises(ShardError):
        inject(f, 10_000, 1)
    with pytest.raises(ShardError):
        inject(f, 0, 1 << 16)


def test_encoding_is_bit_reproducible(tmp_path):
    for d in ("a", "b"):
        encode_payload(b"same input" * 99, tmp_path / d, 6, FieldSpec.default(8))
    assert [f.read_bytes() for f in shards(tmp_path / "a")] == [f.read_bytes() for f in shards(tmp_path / "b")]


# -- command line ---------------------------------------------------------------


def test_cli_exit_codes(tmp_path, capsys):
    src = tmp_path / "in.bin"
    src.write_bytes(bytes(range(256)) * 8)
    d = tmp_path / "s"
    assert main(["encode", "--in", str(src), "--out-dir", str(d), "--k", "6", "--field", "8:11d"]) == 0
    assert main(["scrub", "--dir", str(d)]) == 0
    f = shards(d)
    assert main(["inject", "--shard", str(f[0]), "--stripe", "2", "--xor", "1f"]) == 0
    assert main(["scrub", "--dir", str(d), "--repair"]) == 1
    assert main(["scrub", "--dir", str(d)]) == 0
    for g in f[:3]:
        assert main(["inject", "--shard", str(g), "--stripe", "7", "--xor", "a"]) == 0
    assert main(["scrub", "--dir", str(d), "--list-candidates"]) == 2
    out = tmp_path / "out.bin"
    assert main(["reassemble", "--dir", str(d), "--out", str(out), "--missing", "0,1,2"]) == 1
    assert out.read_bytes() == src.read_bytes()
    assert main(["reassemble", "--dir", str(d), "--out", str(out), "--missing", "0,1,2,3,4"]) == 2
    assert main(["inject", "--shard", str(f[0]), "--stripe", "2", "--xor", "0"]) == 64
    assert main(["encode", "--in", str(src), "--out-dir", str(d), "--k", "300"]) == 64
    assert main(["encode", "--in", str(tmp_path / "nope"), "--out-dir", str(d), "--k", "3"]) == 64
    assert main(["encode", "--in", str(src), "--out-dir", str(d), "--k", "3", "--field", "3"]) == 64
    with pytest.raises(SystemExit) as exc:
        main(["scrub"])
    assert exc.value.code == 64
    capsys.readouterr()


def test_cli_faultlab_campaign(tmp_path):
    import json

    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"m": 4, "k": 13, "weights": {"1": 0.5, "2": 0.5}, "trials": 50, "seed": 1}))
    out = tmp_path / "report.json"
    assert main(["faultlab", "campaign", "--spec", str(spec), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["report"]["trials"] == 50
    assert doc["report"]["counts"]["corrected_exact"] + doc["report"]["counts"]["clean"] == 50
    spec.write_text(json.dumps({"m": 4, "k": 13, "colour": "red"}))
    assert main(["faultlab", "campaign", "--spec", str(spec), "--out", str(out)]) == 64
