"""
qmodulus test suite

Unit tests cover each module on worked examples and sampled properties;
integration tests run the verification suites and the command line end to
end.
"""
