from catmachine.battery import LAWS, pool_for, run_battery
from catmachine.core import Base, Exp
from catmachine.formats import default_semantics, load_semantics


def test_pool_uses_pointed_domains():
    pool = pool_for(default_semantics())
    assert Base("E") in pool and Base("Dx") in pool and Base("Dy") in pool
    assert Exp(Base("Dy"), Base("Dy")) in pool


def test_battery_default():
    report = run_battery(default_semantics(), pairs=60, seed=3)
    assert report.passed, [f.record() for f in report.failures[:3]]
    assert all(report.checked[law] == 60 for law in LAWS)


def test_battery_singleton():
    assert run_battery(load_semantics("singleton"), pairs=30).passed
