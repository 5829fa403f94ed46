import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from django.test import SimpleTestCase

from core.exceptions import DimensionMismatch, OutOfRange, TooLarge
from core.field import field_new
from core.labels import LabelSpace


class IndexTests(SimpleTestCase):

    def setUp(self):
        self.space = LabelSpace(2, 2)

    def test_first_coordinate_is_most_significant(self):
        self.assertEqual(self.space.index_of((1, 0)), 2)
        self.assertEqual(self.space.label_of(3), (1, 1))

    def test_round_trip_over_all_indices(self):
        space = LabelSpace(3, 3)
        for index in range(space.size):
            self.assertEqual(space.index_of(space.label_of(index)), index)

    def test_out_of_range(self):
        with self.assertRaises(OutOfRange):
            self.space.label_of(4)
        with self.assertRaises(OutOfRange):
            self.space.index_of((2, 0))
        with self.assertRaises(OutOfRange):
            self.space.slice(3, 0)

    def test_size_cap(self):
        with self.assertRaises(TooLarge):
            LabelSpace(2, 21)

    def test_base_must_be_at_least_two(self):
        with self.assertRaises(OutOfRange):
            LabelSpace(1, 4)


class TranslationTests(SimpleTestCase):

    def setUp(self):
        self.space = LabelSpace(2, 2)

    def test_zero_shift_is_identity(self):
        perm = self.space.permutation(self.space.zero())
        self.assertEqual(perm.tolist(), [0, 1, 2, 3])
        self.assertTrue(self.space.zero().is_identity())

    def test_first_unit_swaps_halves(self):
        perm = self.space.permutation(self.space.unit(1))
        self.assertEqual(perm.tolist(), [2, 3, 0, 1])

    def test_second_unit_swaps_neighbours(self):
        perm = self.space.permutation(self.space.unit(2))
        self.assertEqual(perm.tolist(), [1, 0, 3, 2])

    def test_compose(self):
        e1, e2 = self.space.unit(1), self.space.unit(2)
        self.assertTrue(self.space.compose(e1, e1).is_identity())
        self.assertEqual(self.space.compose(e1, self.space.zero()), e1)
        self.assertEqual(
            self.space.compose(e1, e2), self.space.compose(e2, e1)
        )

    def test_shift_length_checked(self):
        with self.assertRaises(DimensionMismatch):
            self.space.translation((1, 0, 0))

    def test_support(self):
        t = LabelSpace(3, 4).translation((0, 2, 0, 1))
        self.assertEqual(t.support(), (2, 4))

    def test_permutation_matrix_acts_on_vectors(self):
        field = field_new(5)
        matrix = self.space.permutation_matrix(field, self.space.unit(1))
        x = np.array([[1], [2], [3], [4]])
        self.assertEqual((matrix.data @ x).ravel().tolist(), [3, 4, 1, 2])

    @given(
        st.lists(st.integers(0, 2), min_size=3, max_size=3),
        st.lists(st.integers(0, 2), min_size=3, max_size=3),
    )
    def test_composition_matches_permutation_product(self, s1, s2):
        space = LabelSpace(3, 3)
        t1, t2 = space.translation(s1), space.translation(s2)
        p1, p2 = space.permutation(t1), space.permutation(t2)
        composed = space.permutation(space.compose(t1, t2))
        self.assertEqual(composed.tolist(), p2[p1].tolist())
        self.assertEqual(sorted(composed.tolist()), list(range(27)))


class SliceTests(SimpleTestCase):

    def test_small_slice(self):
        members = LabelSpace(2, 2).slice(1, 0)
        self.assertEqual(members.as_set(), {0, 1})
        self.assertIn(1, members)
        self.assertNotIn(2, members)

    def test_slice_size(self):
        space = LabelSpace(2, 6)
        for j in range(1, 7):
            for digit in range(2):
                self.assertEqual(len(space.slice(j, digit)), 32)

    def test_translation_moves_slice(self):
        space = LabelSpace(3, 3)
        for j in range(1, 4):
            for digit in range(3):
                t = space.unit(j, digit)
                self.assertTrue(
                    space.maps_onto(
                        t, space.slice(j, digit), space.slice(j, 0)
                    )
                )

    def test_other_coordinates_fix_slice(self):
        space = LabelSpace(2, 3)
        members = space.slice(2, 0)
        self.assertTrue(space.maps_onto(space.unit(1), members))
        self.assertTrue(space.maps_onto(space.unit(3), members))
        self.assertFalse(space.maps_onto(space.unit(2), members))

    def test_members_are_read_only(self):
        members = LabelSpace(2, 2).slice(1, 0).members
        with self.assertRaises(ValueError):
            members[0] = 3

    def test_positions(self):
        members = LabelSpace(2, 2).slice(2, 1)
        self.assertEqual(members.positions([1, 3, 0]).tolist(), [0, 1, -1])

    def test_translates_partition_the_labels(self):
        for base, length in ((2, 3), (3, 2), (2, 6), (3, 3)):
            space = LabelSpace(base, length)
            for j in range(1, length + 1):
                base_slice = space.slice(j, 0)
                translates = [
                    space.image(space.unit(j, digit), base_slice.members)
                    for digit in range(base)
                ]
                self.assertEqual(
                    np.sort(np.concatenate(translates)).tolist(),
                    list(range(space.size)),
                )


class BijectionTests(SimpleTestCase):

    def test_every_shift_permutes_the_labels(self):
        for base, length in ((3, 2), (2, 3)):
            space = LabelSpace(base, length)
            for index in range(space.size):
                t = space.translation(space.label_of(index))
                perm = space.permutation(t)
                self.assertEqual(
                    sorted(perm.tolist()), list(range(space.size))
                )
