import json

import pandas as pd
import streamlit as st

from qmut.classifier import Reason, classify
from qmut.config import DEFAULT_TARGET, MAX_TARGET, load_settings
from qmut.divergence import divergence_witness, sharpness_probe
from qmut.errors import QuiverError
from qmut.quiver_core import parse_triple

st.header(body="Quivers", divider=True)
st.subheader("Divergence certificates")
st.write(
    "For an unbounded class, build an explicit mutation sequence whose norms grow past a target, "
    "with the growth bound checked at every step. For a bounded class, probe how close the largest "
    "weight gets to the bound sqrt(C(Q))."
)

settings = load_settings()

tab_a, tab_b, tab_c = st.tabs(["**Try it**", "**Code snippet**", "**Requirements**"])

with tab_a:
    quiver_text = st.text_input("Quiver as b12,b23,b13:", value="2,2,-0.5", key="quiver")

    try:
        triple = parse_triple(quiver_text)
        verdict = classify(triple)
    except QuiverError as e:
        st.error(f"Invalid quiver: {e}")
        st.stop()

    if not verdict.bounded:
        target = st.number_input(
            "Target norm:", min_value=1.0, max_value=MAX_TARGET, value=DEFAULT_TARGET, format="%g", key="target"
        )
        try:
            certificate = divergence_witness(triple, target, max_steps=settings.max_steps)
        except QuiverError as e:
            st.error(f"Could not build a certificate: {e}")
        else:
            col1, col2, col3 = st.columns(3)
            col1.metric("Strategy", certificate.strategy.value)
            col2.metric("Mutations", len(certificate.sequence))
            col3.metric("Achieved norm", f"{certificate.achieved_norm:.6g}")
            if not certificate.guaranteed:
                st.info("The recorded bounds are not backed by a theorem for this starting quiver.")
            steps = pd.DataFrame([step.to_dict() for step in certificate.steps])
            st.dataframe(steps, use_container_width=True, hide_index=True)
            st.download_button(
                "Download certificate",
                data=json.dumps(certificate.to_dict(), indent=2),
                file_name="certificate.json",
                mime="application/json",
            )
    elif verdict.reason is Reason.DISCONNECTED:
        st.info("The quiver is disconnected, so mutation only flips arrows.")
    else:
        st.success(f"The class is bounded by sqrt(C(Q)) = {verdict.norm_bound:.6g}; no certificate exists.")
        iterations = st.slider("Probe rounds:", min_value=1, max_value=200, value=50, key="iterations")
        try:
            rounds = sharpness_probe(triple, iterations)
        except QuiverError as e:
            st.error(f"Probe failed: {e}")
        else:
            probe = pd.DataFrame(
                [{"round": i, "norm": value, "quiver": str(q.as_tuple())} for i, (q, value) in enumerate(rounds)]
            )
            st.metric("Largest weight reached", f"{rounds[-1][1]:.9g}")
            st.line_chart(probe, x="round", y="norm")
            st.dataframe(probe, use_container_width=True, hide_index=True)

with tab_b:
    st.code(
        """
        import streamlit as st
        from qmut.divergence import divergence_witness
        from qmut.quiver_core import mutate_sequence, norm, parse_triple

        triple = parse_triple("2,2,-0.5")
        certificate = divergence_witness(triple, target=1e6)

        # the sequence replays on the original labels
        final = mutate_sequence(triple, certificate.sequence)[-1]
        st.write(certificate.strategy.value, norm(final))
        """
    )

with tab_c:
    col1, col2 = st.columns(2)

    with col1:
        st.markdown("""
                    **Configuration**
                    * `QMUT_MAX_STEPS` - step budget for a certificate
                    * Targets up to 1e12
                    """)
    with col2:
        st.markdown("""
                    **Dependencies**
                    * [Streamlit](https://pypi.org/project/streamlit/) - `streamlit`
                    * [pandas](https://pypi.org/project/pandas/) - `pandas`
                    """)
