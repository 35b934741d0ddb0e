# Makes 'src' a package
