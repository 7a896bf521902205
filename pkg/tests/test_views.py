from streamlit.testing.v1 import AppTest

TIMEOUT = 30


def _page(name):
    return AppTest.from_file(f"../views/{name}.py", default_timeout=TIMEOUT).run()


def test_classify_page():
    at = _page("quiver_classify")
    assert not at.exception
    assert "Bounded" in at.success[0].value

    at.text_input(key="quiver").set_value("3,3,3").run()
    assert "BothExceeded" in at.warning[0].value

    at.text_input(key="quiver").set_value("not a quiver").run()
    assert not at.exception
    assert len(at.error) == 1


def test_mutate_page():
    at = _page("quiver_mutate")
    assert not at.exception
    assert len(at.dataframe) == 1

    at.text_input(key="sequence").set_value("1,4").run()
    assert len(at.error) == 1


def test_divergence_page_unbounded_quiver():
    at = _page("divergence_witness")
    assert not at.exception
    assert at.metric[0].value == "MuStar"

    at.number_input(key="target").set_value(100.0).run()
    assert not at.exception
    assert float(at.metric[2].value) >= 100


def test_divergence_page_bounded_quiver():
    at = _page("divergence_witness")
    at.text_input(key="quiver").set_value("-0.6,-0.43,0.567").run()
    assert not at.exception
    assert len(at.success) == 1
    assert at.slider(key="iterations").value == 50

    at.text_input(key="quiver").set_value("5,0,0").run()
    assert len(at.info) == 1

    at.text_input(key="quiver").set_value("1,2").run()
    assert len(at.error) == 1


def test_orbit_page():
    at = _page("orbit_explorer")
    assert not at.exception
    assert at.metric[1].value == "Bounded"

    at.selectbox(key="source").set_value("orbit_d").run()
    assert not at.exception
    at.selectbox(key="index").set_value(3).run()
    assert not at.exception

    at.selectbox(key="source").set_value("Random sequence").run()
    at.text_input(key="quiver").set_value("1,1").run()
    assert len(at.error) == 1


def test_geometry_page():
    at = _page("geometry_realizations")
    assert not at.exception

    at.number_input(key="d13").set_value(5.0).run()
    assert len(at.error) == 1

    at.radio(key="model").set_value("Lines").run()
    assert not at.exception
    assert any(caption.value.startswith("C(Q) = ") for caption in at.caption)

    at.selectbox(key="form").set_value("Hyperbolic").run()
    assert not at.exception
