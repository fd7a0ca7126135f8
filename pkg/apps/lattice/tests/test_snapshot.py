import hashlib
import struct
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from apps.errors import SnapshotError
from apps.lattice.field import cold_start, hot_start
from apps.lattice.snapshot import HEADER, decode, encode, read_snapshot, write_snapshot


class SnapshotTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / "cfg.su2"
        self.field = hot_start((4, 2, 2, 4), seed=6)

    def tearDown(self):
        self.tmp.cleanup()

    def test_write_then_read_is_bit_exact(self):
        digest = write_snapshot(self.path, self.field, 2.3, 120)
        self.assertEqual(digest, hashlib.sha256(self.path.read_bytes()).hexdigest())
        field, beta, sweep = read_snapshot(self.path, expected_digest=digest)
        np.testing.assert_array_equal(field.links, self.field.links)
        self.assertEqual((beta, sweep), (2.3, 120))

    def test_header_layout(self):
        blob = encode(cold_start((2, 4, 6, 8)), 1.8, 7)
        self.assertEqual(blob[:8], b"SU2LAT\0\0")
        self.assertEqual(struct.unpack_from("<I", blob, 8)[0], 1)
        self.assertEqual(struct.unpack_from("<4I", blob, 12), (2, 4, 6, 8))
        self.assertEqual(struct.unpack_from("<d", blob, 28)[0], 1.8)
        self.assertEqual(struct.unpack_from("<Q", blob, 36)[0], 7)
        self.assertEqual(len(blob), HEADER.size + 2 * 4 * 6 * 8 * 4 * 4 * 8)

    def test_link_order_is_site_major_x_fastest(self):
        payload = np.frombuffer(encode(self.field, 2.0, 0), dtype="<f8", offset=HEADER.size)
        quats = payload.reshape(-1, 4)
        # entry 0..3 are the four directions at the origin, entry 4 is mu=0 at x=1
        np.testing.assert_array_equal(quats[2], self.field.links[2, 0, 0, 0, 0])
        np.testing.assert_array_equal(quats[4], self.field.links[0, 1, 0, 0, 0])
        np.testing.assert_array_equal(quats[4 * 4 + 1], self.field.links[1, 0, 1, 0, 0])

    def test_truncated_payload(self):
        blob = encode(self.field, 2.0, 0)
        with self.assertRaises(SnapshotError):
            decode(blob[:-8])
        with self.assertRaises(SnapshotError):
            decode(blob[:10])

    def test_bad_magic(self):
        blob = bytearray(encode(self.field, 2.0, 0))
        blob[:8] = b"NOTALATT"
        with self.assertRaises(SnapshotError):
            decode(bytes(blob))

    def test_digest_mismatch(self):
        write_snapshot(self.path, self.field, 2.0, 1)
        with self.assertRaises(SnapshotError):
            read_snapshot(self.path, expected_digest="0" * 64)

    def test_unnormalized_links(self):
        field = cold_start((2, 2, 2, 2))
        field.links[0, 0, 0, 0, 0, 0] = 2.0
        with self.assertRaises(SnapshotError):
            decode(encode(field, 2.0, 0))

    def test_missing_file(self):
        with self.assertRaises(SnapshotError):
            read_snapshot(Path(self.tmp.name) / "absent.su2")
