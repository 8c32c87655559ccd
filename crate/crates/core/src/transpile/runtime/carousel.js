MAML.car=function(b,n){var c=b.parentNode.getElementsByTagName("img"),k=c.length,i=0;while(i<k&&c[i].style.display=="none")i++;if(i<k)c[i].style.display="none";c[((i%k+n)%k+k)%k].style.display=""};
