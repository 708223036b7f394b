import pytest

from singquad.errata import PRINTED_FORMS, compare_entry, erratum_report


def test_only_simpson_derivative_terms_differ():
    mismatched = {key: compare_entry(*key).mismatched_orders for key in PRINTED_FORMS}
    assert mismatched.pop((2, 1)) == (1,)
    assert mismatched.pop((2, 2)) == (1,)
    assert all(not v for v in mismatched.values())


def test_printed_simpson_derivative_term_is_sign_flipped():
    from singquad.corrections import generate_correction

    for j in (1, 2):
        gen = generate_correction(2, j).coeffs[1]
        assert {k: -v for k, v in gen.items()} == PRINTED_FORMS[2, j][1]


def test_report_lists_every_entry():
    text = erratum_report()
    assert text.count("MATCH") == 10
    assert text.count("MISMATCH") == 2
    assert "C_{1,1}  alpha from left node  MATCH" in text
    assert text.count("<-- differs") == 2
