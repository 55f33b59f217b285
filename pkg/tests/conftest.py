import pytest

from mulogic import Signature, build_model


def make_std_signature() -> Signature:
    sig = Signature()
    bool_ = sig.declare_sort("Bool")
    nat = sig.declare_sort("Nat")
    sig.declare_symbol("true", [], bool_)
    sig.declare_symbol("false", [], bool_)
    sig.declare_symbol("notb", [bool_], bool_)
    sig.declare_symbol("andb", [bool_, bool_], bool_)
    sig.declare_symbol("O", [], nat)
    sig.declare_symbol("S", [nat], nat)
    sig.declare_symbol("isZero", [nat], bool_)
    sig.declare_symbol("plus", [nat, nat], nat)
    return sig


def make_std_model(sig: Signature):
    nat_labels = ["0", "1", "2", "3"]
    plus_table = {}
    for a in range(4):
        for b in range(4):
            plus_table[(str(a), str(b))] = [str(a + b)] if a + b <= 3 else []
    return build_model(
        sig,
        {"Bool": ["t", "f"], "Nat": nat_labels},
        {
            "true": {(): ["t"]},
            "false": {(): ["f"]},
            "notb": {("t",): ["f"], ("f",): ["t"]},
            "andb": {
                ("t", "t"): ["t"],
                ("t", "f"): ["f"],
                ("f", "t"): ["f"],
                ("f", "f"): ["f"],
            },
            "O": {(): ["0"]},
            "S": {("0",): ["1"], ("1",): ["2"], ("2",): ["3"], ("3",): []},
            "isZero": {("0",): ["t"], ("1",): ["f"], ("2",): ["f"], ("3",): ["f"]},
            "plus": plus_table,
        },
    )


@pytest.fixture
def std_sig():
    return make_std_signature()


@pytest.fixture
def std_model(std_sig):
    return make_std_model(std_sig)
