import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup; the package falls back to the
# numpy implementations in rasterfm._kernels_py when the extension is absent.
ext_modules = []
if os.environ.get("RASTERFM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("rasterfm._kernels", ["src/rasterfm/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
