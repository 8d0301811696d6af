from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("brimode._stepper", ["src/brimode/_stepper.pyx"])],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    # Pure-python stepper is selected at import time when the extension
    # is unavailable, so an interpreter without Cython still installs.
    extensions = []

setup(ext_modules=extensions)
