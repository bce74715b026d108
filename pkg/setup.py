from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("cara._kernels", ["src/cara/_kernels.pyx"],
                   include_dirs=[np.get_include()])],
        language_level=3,
    )
except ImportError:
    # pure-Python fallback in cara._kernels_py is selected at import
    pass

setup(ext_modules=ext_modules)
